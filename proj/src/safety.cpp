#include "acctraj/safety.hpp"

#include <cmath>
#include <limits>

#include "acctraj/errors.hpp"
#include "acctraj/kinematics.hpp"

namespace acctraj {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double compute_ttc(double s, double dv) {
    if (s <= 0.0) throw DataError("compute_ttc: overlap/invalid spacing");
    return dv < 0.0 ? s / (-dv) : kInf;
}

double compute_drac(double s, double dv) {
    if (s <= 0.0) throw DataError("compute_drac: overlap/invalid spacing");
    return dv < 0.0 ? dv * dv / s : 0.0;
}

SafetySeries safety_series(const LeaderFollowerPair& pair) {
    const auto features = extract_features(pair);
    SafetySeries out;
    out.pair_id = pair.pair_id;
    out.ttc.reserve(features.size());
    out.drac.reserve(features.size());
    for (const auto& f : features) {
        out.ttc.push_back(compute_ttc(f.s, f.dv));
        out.drac.push_back(compute_drac(f.s, f.dv));
    }
    return out;
}

double critical_event_rate(const SafetySeries& series, SafetyMetric metric,
                           double threshold) {
    const auto& vals = metric == SafetyMetric::TTC ? series.ttc : series.drac;
    if (vals.empty()) throw DataError("critical_event_rate: empty series");

    std::size_t crit = 0;
    for (double x : vals) {
        if (metric == SafetyMetric::TTC) {
            if (std::isfinite(x) && x < threshold) ++crit;
        } else {
            if (x > threshold) ++crit;
        }
    }
    return 100.0 * static_cast<double>(crit) / static_cast<double>(vals.size());
}

std::vector<double> default_thresholds(SafetyMetric metric) {
    std::vector<double> out;
    const double lo = metric == SafetyMetric::TTC ? 1.0 : 2.0;
    const double hi = metric == SafetyMetric::TTC ? 4.0 : 5.0;
    for (double x = lo; x <= hi + 1e-9; x += 0.5) out.push_back(x);
    return out;
}

ThresholdSweep sweep_thresholds(
    const std::map<FollowerClass, std::vector<SafetySeries>>& grouped,
    SafetyMetric metric, const std::vector<double>& thresholds) {
    ThresholdSweep sweep;
    sweep.metric = metric;
    for (double th : thresholds) {
        SweepRow row;
        row.threshold = th;
        for (const auto& [cls, series_list] : grouped) {
            if (series_list.empty()) continue;
            double sum = 0.0;
            for (const auto& s : series_list) sum += critical_event_rate(s, metric, th);
            row.mean_proportion[cls] = sum / static_cast<double>(series_list.size());
        }
        auto ev = row.mean_proportion.find(FollowerClass::EV);
        auto icev = row.mean_proportion.find(FollowerClass::ICEV);
        if (ev != row.mean_proportion.end() && icev != row.mean_proportion.end() &&
            icev->second != 0.0) {
            row.change_percent = 100.0 * (ev->second - icev->second) / icev->second;
        }
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

}  // namespace acctraj
