#pragma once

#include <map>
#include <string>
#include <vector>

#include "acctraj/similarity.hpp"  // FollowerClass
#include "acctraj/types.hpp"

namespace acctraj {

enum class SafetyMetric { TTC, DRAC };

// ttc holds +inf where no closing (dv >= 0); drac is 0 there.
struct SafetySeries {
    std::string pair_id;
    std::vector<double> ttc;   // s
    std::vector<double> drac;  // m/s^2
};

// s / (-dv) when dv < 0, +inf otherwise. s must be positive.
double compute_ttc(double s, double dv);

// dv^2 / s when dv < 0, 0 otherwise. s must be positive.
double compute_drac(double s, double dv);

// Raw spacing feeds s; dv comes from smoothed speeds.
SafetySeries safety_series(const LeaderFollowerPair& pair);

// Percent of evaluated steps that are critical; infinite-TTC steps count in
// the denominator.
double critical_event_rate(const SafetySeries& series, SafetyMetric metric,
                           double threshold);

struct SweepRow {
    double threshold = 0.0;
    std::map<FollowerClass, double> mean_proportion;  // percent
    std::optional<double> change_percent;             // 100*(EV-ICEV)/ICEV
};

struct ThresholdSweep {
    SafetyMetric metric = SafetyMetric::TTC;
    std::vector<SweepRow> rows;
};

std::vector<double> default_thresholds(SafetyMetric metric);

// Per threshold and class, the unweighted mean of per-pair critical rates.
ThresholdSweep sweep_thresholds(
    const std::map<FollowerClass, std::vector<SafetySeries>>& grouped,
    SafetyMetric metric, const std::vector<double>& thresholds);

}  // namespace acctraj
