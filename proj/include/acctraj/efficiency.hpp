#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acctraj/types.hpp"

namespace acctraj {

struct AsvResult {
    std::string pair_id;
    double v_star = 0.0;  // desired cruising speed, m/s
    double asv = 0.0;     // mean |v - v*|, m/s
    double t1 = 0.0;
    double t2 = 0.0;
};

// Time-weighted mean of |v(t) - v_star| via trapezoidal integration.
AsvResult compute_asv(const std::vector<double>& v, const std::vector<double>& t,
                      double v_star,
                      std::optional<std::pair<double, double>> window = std::nullopt);

// Default v* estimator: mean smoothed speed over the analysis window.
double estimate_v_star(const std::vector<double>& v);

struct VsFit {
    double jam_spacing = 0.0;      // m, boundary condition
    double desired_speed = 0.0;    // m/s, boundary condition
    double critical_spacing = 0.0; // m, fitted breakpoint
    double slope = 0.0;            // (m/s)/m over the car-following segment
    double residual_rmse = 0.0;    // m/s
    std::size_t n_points = 0;
    bool boundary_warning = false; // breakpoint pinned at a search bound

    // Fitted speed at spacing s: 0 below jam, linear up to the breakpoint,
    // desired_speed beyond.
    double evaluate(double s) const;
};

// One-parameter least-squares fit of the two-segment v-s family over the
// breakpoint, golden-section refined to 1e-3 m.
VsFit fit_vs_curve(const std::vector<std::pair<double, double>>& points,
                   double jam_spacing, double desired_speed);

struct FiveNumberSummary {
    double min = 0.0, p25 = 0.0, median = 0.0, p75 = 0.0, max = 0.0;
};

FiveNumberSummary summarize_group(const std::vector<double>& values);

}  // namespace acctraj
