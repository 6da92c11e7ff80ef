#include <doctest.h>

#include <algorithm>
#include <random>

#include "acctraj/errors.hpp"
#include "acctraj/kinematics.hpp"

using namespace acctraj;

TEST_CASE("smooth_speed of a constant series is the constant") {
    std::vector<double> u(50, 10.0);
    auto v = smooth_speed(u);
    for (double x : v) CHECK(x == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("smooth_speed startup window grows from one sample") {
    std::vector<double> u = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    auto v = smooth_speed(u, 10);
    CHECK(v.front() == 1.0);               // w = 1
    CHECK(v[1] == doctest::Approx(1.5));   // mean of 1,2
    CHECK(v.back() == doctest::Approx(5.5));  // mean of 1..10
}

TEST_CASE("smooth_speed stays within the raw min/max") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 30.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> u(100);
        for (double& x : u) x = dist(rng);
        auto v = smooth_speed(u);
        const double lo = *std::min_element(u.begin(), u.end());
        const double hi = *std::max_element(u.begin(), u.end());
        for (double x : v) {
            CHECK(x >= lo - 1e-12);
            CHECK(x <= hi + 1e-12);
        }
    }
}

TEST_CASE("smooth_speed rejects empty input and bad window") {
    CHECK_THROWS_AS(smooth_speed({}), DataError);
    CHECK_THROWS_AS(smooth_speed({1.0}, 0), DataError);
}

TEST_CASE("compute_acceleration forward difference") {
    std::vector<double> v = {10.0, 11.0};
    std::vector<double> t = {0.0, 0.1};
    auto a = compute_acceleration(v, t);
    CHECK(a[0] == doctest::Approx(10.0));
    CHECK(a[1] == a[0]);  // backward fill
}

TEST_CASE("compute_acceleration of a constant series is zero") {
    std::vector<double> v(20, 15.0), t(20);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * i;
    for (double x : compute_acceleration(v, t)) CHECK(x == 0.0);
}

TEST_CASE("compute_acceleration recovers the slope of a linear ramp exactly") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> slope_dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double slope = slope_dist(rng);
        std::vector<double> t(50), v(50);
        for (std::size_t i = 0; i < t.size(); ++i) {
            t[i] = 0.1 * i;
            v[i] = 5.0 + slope * t[i];
        }
        auto a = compute_acceleration(v, t);
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(slope).epsilon(1e-9));
    }
}

TEST_CASE("compute_acceleration error paths") {
    CHECK_THROWS_AS(compute_acceleration({1.0}, {0.0}), DataError);
    CHECK_THROWS_AS(compute_acceleration({1.0, 2.0}, {0.0, 0.0}), DataError);
}

namespace {

VehicleTrajectory ramp_trajectory(double duration_s, double speed = 20.0) {
    VehicleMeta meta;
    meta.vehicle_id = "test";
    RawSeries samples;
    const auto steps = static_cast<std::size_t>(duration_s * 10.0) + 1;
    for (std::size_t k = 0; k < steps; ++k) {
        RawSample s;
        s.t = 0.1 * static_cast<double>(k);
        s.u = speed;
        s.ivs = 15.0;
        samples.push_back(s);
    }
    return build_trajectory(meta, samples);
}

}  // namespace

TEST_CASE("trim_trajectory removes head and tail seconds") {
    auto traj = ramp_trajectory(100.0);
    auto trimmed = trim_trajectory(traj, 10.0, 10.0);
    CHECK(trimmed.duration() == doctest::Approx(80.0));
    CHECK(trimmed.t.front() == doctest::Approx(10.0));
    CHECK(trimmed.s.size() == trimmed.t.size());
}

TEST_CASE("trim_trajectory with zero amounts is the identity") {
    auto traj = ramp_trajectory(50.0);
    auto trimmed = trim_trajectory(traj, 0.0, 0.0);
    CHECK(trimmed.t == traj.t);
    CHECK(trimmed.v == traj.v);
}

TEST_CASE("trim_trajectory rejects too-short trajectories") {
    auto traj = ramp_trajectory(15.0);
    CHECK_THROWS_AS(trim_trajectory(traj, 10.0, 10.0), DataError);
}

TEST_CASE("extract_features computes dv = v_l - v_f") {
    LeaderFollowerPair pair;
    pair.pair_id = "p";
    pair.leader = ramp_trajectory(30.0, 20.0);
    pair.follower = ramp_trajectory(30.0, 18.0);
    auto features = extract_features(pair);
    CHECK(features.size() == pair.follower.size());
    for (const auto& f : features) {
        CHECK(f.dv == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.s == 15.0);  // spacing passes through unchanged
    }
}

TEST_CASE("extract_features dv antisymmetry on random speeds") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 30.0);
    LeaderFollowerPair pair;
    pair.leader = ramp_trajectory(20.0);
    pair.follower = ramp_trajectory(20.0);
    for (std::size_t k = 0; k < pair.leader.size(); ++k) {
        pair.leader.v[k] = dist(rng);
        pair.follower.v[k] = dist(rng);
    }
    auto features = extract_features(pair);
    for (std::size_t k = 0; k < features.size(); ++k)
        CHECK(features[k].dv == pair.leader.v[k] - pair.follower.v[k]);
}

TEST_CASE("extract_features rejects misaligned series") {
    LeaderFollowerPair pair;
    pair.leader = ramp_trajectory(30.0);
    pair.follower = ramp_trajectory(20.0);
    CHECK_THROWS_AS(extract_features(pair), DataError);
}
