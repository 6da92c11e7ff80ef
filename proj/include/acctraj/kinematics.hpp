#pragma once

#include <vector>

#include "acctraj/types.hpp"

namespace acctraj {

// Trailing moving average; the window grows from 1 at the first sample up
// to `window`, so v[k] = mean(u[k-w+1..k]) with w = min(window, k+1).
std::vector<double> smooth_speed(const std::vector<double>& u, int window = 10);

// Forward finite difference a[k] = (v[k+1]-v[k])/(t[k+1]-t[k]); the last
// element repeats a[last-1] so the series keeps its length.
std::vector<double> compute_acceleration(const std::vector<double>& v,
                                         const std::vector<double>& t);

// Full per-vehicle derivation: smooth, differentiate, carry spacing through.
VehicleTrajectory build_trajectory(const VehicleMeta& meta, const RawSeries& samples,
                                   int smooth_window = 10);

struct TrimOptions {
    double head_s = 10.0;
    double tail_s = 10.0;
    // Boundary samples with v below this are additionally trimmed
    // (end-of-run deceleration and startup artifacts).
    double low_speed_floor = 0.1;
};

VehicleTrajectory trim_trajectory(const VehicleTrajectory& traj, double head_s,
                                  double tail_s);
LeaderFollowerPair trim_pair(const LeaderFollowerPair& pair, const TrimOptions& opts);

std::vector<FeatureStep> extract_features(const LeaderFollowerPair& pair);

}  // namespace acctraj
