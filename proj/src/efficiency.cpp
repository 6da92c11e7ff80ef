#include "acctraj/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "acctraj/errors.hpp"

namespace acctraj {

AsvResult compute_asv(const std::vector<double>& v, const std::vector<double>& t,
                      double v_star, std::optional<std::pair<double, double>> window) {
    if (v.size() != t.size() || v.size() < 2)
        throw DataError("compute_asv: need aligned series of length >= 2");
    if (v_star <= 0.0) throw DataError("compute_asv: v_star must be positive");

    double t1 = window ? window->first : t.front();
    double t2 = window ? window->second : t.back();
    if (t1 < t.front() || t2 > t.back() || t2 <= t1)
        throw DataError("compute_asv: window outside trajectory span");

    // Trapezoid over |v - v*| at the sample points inside [t1, t2].
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        const double a = std::max(t[k], t1);
        const double b = std::min(t[k + 1], t2);
        if (b <= a) continue;
        // Linear interpolation of the deviation at the clipped endpoints.
        const double dt = t[k + 1] - t[k];
        auto dev = [&](double tau) {
            const double w = (tau - t[k]) / dt;
            const double dk = std::abs(v[k] - v_star);
            const double dk1 = std::abs(v[k + 1] - v_star);
            return dk + w * (dk1 - dk);
        };
        integral += 0.5 * (dev(a) + dev(b)) * (b - a);
    }

    AsvResult res;
    res.v_star = v_star;
    res.t1 = t1;
    res.t2 = t2;
    res.asv = integral / (t2 - t1);
    return res;
}

double estimate_v_star(const std::vector<double>& v) {
    if (v.empty()) throw DataError("estimate_v_star: empty series");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double VsFit::evaluate(double s) const {
    if (s <= jam_spacing) return 0.0;
    if (s >= critical_spacing) return desired_speed;
    return desired_speed * (s - jam_spacing) / (critical_spacing - jam_spacing);
}

namespace {

double vs_sse(const std::vector<std::pair<double, double>>& points, double jam,
              double desired, double s_c) {
    double sse = 0.0;
    for (const auto& [s, v] : points) {
        double f;
        if (s <= jam) {
            f = 0.0;
        } else if (s >= s_c) {
            f = desired;
        } else {
            f = desired * (s - jam) / (s_c - jam);
        }
        const double r = v - f;
        sse += r * r;
    }
    return sse;
}

}  // namespace

VsFit fit_vs_curve(const std::vector<std::pair<double, double>>& points,
                   double jam_spacing, double desired_speed) {
    if (points.size() < 20) throw DataError("fit_vs_curve: need at least 20 points");
    if (jam_spacing < 0.0) throw DataError("fit_vs_curve: negative jam spacing");
    if (desired_speed <= 0.0) throw DataError("fit_vs_curve: desired speed must be positive");

    std::size_t below = 0, at_or_above = 0;
    double s_max = 0.0;
    for (const auto& [s, v] : points) {
        (v < 0.9 * desired_speed ? below : at_or_above) += 1;
        s_max = std::max(s_max, s);
    }
    if (below == 0 || at_or_above == 0)
        throw DataError("fit_vs_curve: degenerate regime coverage");

    const double lo0 = jam_spacing + 0.1;
    const double hi0 = s_max;
    if (hi0 <= lo0) throw DataError("fit_vs_curve: no spacing range to search");

    auto f = [&](double s_c) { return vs_sse(points, jam_spacing, desired_speed, s_c); };

    // Coarse scan to bracket the best breakpoint, then golden-section.
    constexpr int kScan = 256;
    double best_sc = lo0;
    double best_sse = f(lo0);
    for (int i = 1; i <= kScan; ++i) {
        const double s_c = lo0 + (hi0 - lo0) * i / kScan;
        const double sse = f(s_c);
        if (sse < best_sse) {
            best_sse = sse;
            best_sc = s_c;
        }
    }
    double lo = std::max(lo0, best_sc - (hi0 - lo0) / kScan);
    double hi = std::min(hi0, best_sc + (hi0 - lo0) / kScan);

    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > 1e-4) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    const double s_c = 0.5 * (lo + hi);

    VsFit fit;
    fit.jam_spacing = jam_spacing;
    fit.desired_speed = desired_speed;
    fit.critical_spacing = s_c;
    fit.slope = desired_speed / (s_c - jam_spacing);
    fit.n_points = points.size();
    fit.residual_rmse = std::sqrt(f(s_c) / static_cast<double>(points.size()));
    fit.boundary_warning = (s_c - lo0 < 1e-3) || (hi0 - s_c < 1e-3);
    return fit;
}

FiveNumberSummary summarize_group(const std::vector<double>& values) {
    if (values.empty()) throw DataError("summarize_group: empty input");
    std::vector<double> v = values;
    std::sort(v.begin(), v.end());

    auto quantile = [&](double p) {
        const double rank = p * (v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(rank));
        const auto hi = static_cast<std::size_t>(std::ceil(rank));
        const double w = rank - lo;
        return v[lo] + w * (v[hi] - v[lo]);
    };

    FiveNumberSummary s;
    s.min = v.front();
    s.p25 = quantile(0.25);
    s.median = quantile(0.5);
    s.p75 = quantile(0.75);
    s.max = v.back();
    return s;
}

}  // namespace acctraj
