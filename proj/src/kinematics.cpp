#include "acctraj/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "acctraj/errors.hpp"

namespace acctraj {

std::vector<double> smooth_speed(const std::vector<double>& u, int window) {
    if (u.empty()) throw DataError("smooth_speed: empty speed series");
    if (window < 1) throw DataError("smooth_speed: window must be >= 1");

    std::vector<double> v(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const std::size_t w = std::min<std::size_t>(window, k + 1);
        double sum = 0.0;
        for (std::size_t z = 0; z < w; ++z) sum += u[k - z];
        v[k] = sum / static_cast<double>(w);
    }
    return v;
}

std::vector<double> compute_acceleration(const std::vector<double>& v,
                                         const std::vector<double>& t) {
    if (v.size() != t.size()) throw DataError("compute_acceleration: length mismatch");
    if (v.size() < 2) throw DataError("compute_acceleration: need at least 2 samples");

    std::vector<double> a(v.size());
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const double dt = t[k + 1] - t[k];
        if (dt <= 0.0) throw DataError("compute_acceleration: non-positive time step");
        a[k] = (v[k + 1] - v[k]) / dt;
    }
    a.back() = a[a.size() - 2];
    return a;
}

VehicleTrajectory build_trajectory(const VehicleMeta& meta, const RawSeries& samples,
                                   int smooth_window) {
    if (samples.size() < 2)
        throw DataError("build_trajectory: series too short for vehicle " +
                        meta.vehicle_id);

    VehicleTrajectory traj;
    traj.meta = meta;
    traj.t.reserve(samples.size());
    traj.u.reserve(samples.size());
    bool any_ivs = false;
    for (const auto& smp : samples) {
        traj.t.push_back(smp.t);
        traj.u.push_back(smp.u);
        if (smp.ivs) any_ivs = true;
    }
    if (any_ivs) {
        traj.s.reserve(samples.size());
        for (const auto& smp : samples) traj.s.push_back(smp.ivs.value_or(0.0));
    }
    traj.v = smooth_speed(traj.u, smooth_window);
    traj.a = compute_acceleration(traj.v, traj.t);
    return traj;
}

namespace {

VehicleTrajectory slice(const VehicleTrajectory& traj, std::size_t lo, std::size_t hi) {
    VehicleTrajectory out;
    out.meta = traj.meta;
    auto cut = [&](const std::vector<double>& src, std::vector<double>& dst) {
        if (src.empty()) return;
        dst.assign(src.begin() + lo, src.begin() + hi);
    };
    cut(traj.t, out.t);
    cut(traj.u, out.u);
    cut(traj.v, out.v);
    cut(traj.a, out.a);
    cut(traj.s, out.s);
    return out;
}

}  // namespace

VehicleTrajectory trim_trajectory(const VehicleTrajectory& traj, double head_s,
                                  double tail_s) {
    if (head_s < 0.0 || tail_s < 0.0)
        throw DataError("trim_trajectory: negative trim amount");
    if (traj.size() < 2 || traj.duration() <= head_s + tail_s)
        throw DataError("trim_trajectory: trajectory too short for vehicle " +
                        traj.meta.vehicle_id);

    const double t_lo = traj.t.front() + head_s;
    const double t_hi = traj.t.back() - tail_s;
    std::size_t lo = 0, hi = traj.size();
    while (lo < traj.size() && traj.t[lo] < t_lo) ++lo;
    while (hi > lo && traj.t[hi - 1] > t_hi) --hi;
    if (hi - lo < 2)
        throw DataError("trim_trajectory: nothing left after trim for vehicle " +
                        traj.meta.vehicle_id);
    return slice(traj, lo, hi);
}

LeaderFollowerPair trim_pair(const LeaderFollowerPair& pair, const TrimOptions& opts) {
    LeaderFollowerPair out;
    out.pair_id = pair.pair_id;
    out.leader = trim_trajectory(pair.leader, opts.head_s, opts.tail_s);
    out.follower = trim_trajectory(pair.follower, opts.head_s, opts.tail_s);

    // Shave boundary stretches where either vehicle sits below the floor.
    std::size_t n = out.follower.size();
    std::size_t lo = 0, hi = n;
    auto slow = [&](std::size_t k) {
        return out.follower.v[k] < opts.low_speed_floor ||
               out.leader.v[k] < opts.low_speed_floor;
    };
    while (lo < n && slow(lo)) ++lo;
    while (hi > lo && slow(hi - 1)) --hi;
    if (hi - lo < 2)
        throw DataError("trim_pair: nothing left after low-speed trim for pair " +
                        pair.pair_id);
    if (lo != 0 || hi != n) {
        out.leader = slice(out.leader, lo, hi);
        out.follower = slice(out.follower, lo, hi);
    }
    return out;
}

std::vector<FeatureStep> extract_features(const LeaderFollowerPair& pair) {
    const auto& ldr = pair.leader;
    const auto& flw = pair.follower;
    if (ldr.size() != flw.size())
        throw DataError("extract_features: misaligned series for pair " + pair.pair_id);

    std::vector<FeatureStep> out(flw.size());
    for (std::size_t k = 0; k < flw.size(); ++k) {
        FeatureStep& f = out[k];
        f.v_f = flw.v[k];
        f.v_l = ldr.v[k];
        f.a_f = flw.a[k];
        f.a_l = ldr.a[k];
        f.s = flw.s.empty() ? 0.0 : flw.s[k];
        f.dv = f.v_l - f.v_f;
    }
    return out;
}

}  // namespace acctraj
