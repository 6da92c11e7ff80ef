#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acctraj/types.hpp"

namespace acctraj {

struct DtwResult {
    double distance = 0.0;    // accumulated |x-y| cost
    double normalized = 0.0;  // distance / max(len X, len Y)
    std::optional<std::size_t> path_length;  // alignment steps, when tracked
};

// Accumulated-cost DP with absolute-difference local cost. With `band` set
// the recurrence is restricted to |h - k*m/n| <= band.
DtwResult dtw_distance(const std::vector<double>& x, const std::vector<double>& y,
                       std::optional<double> band = std::nullopt);

double dtw_normalized(const std::vector<double>& x, const std::vector<double>& y,
                      std::optional<double> band = std::nullopt);

// Decimation: keeps every floor(native/target)-th sample.
std::vector<double> downsample(const std::vector<double>& series, double native_hz,
                               double target_hz);

struct SimilarityMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> dist;  // symmetric, zero diagonal
    std::vector<double> medians;            // per-row median excluding diagonal

    std::size_t index_of(const std::string& id) const;
};

SimilarityMatrix pairwise_matrix(
    const std::vector<std::pair<std::string, std::vector<double>>>& trajectories,
    std::optional<double> band = std::nullopt, unsigned threads = 1);

enum class FollowerClass { EV, ICEV };

struct SelectionResult {
    std::vector<std::string> ev_ids;
    std::vector<std::string> icev_ids;
    std::size_t k = 10;
};

// Per class, the k ids with lowest median normalized DTW; ties at the
// cutoff break by lexicographic id order.
SelectionResult select_most_similar(
    const SimilarityMatrix& matrix,
    const std::function<FollowerClass(const std::string&)>& class_of, std::size_t k = 10);

}  // namespace acctraj
