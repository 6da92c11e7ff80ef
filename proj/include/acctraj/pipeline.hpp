#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "acctraj/config.hpp"
#include "acctraj/efficiency.hpp"
#include "acctraj/emissions.hpp"
#include "acctraj/ingest.hpp"
#include "acctraj/safety.hpp"
#include "acctraj/similarity.hpp"

namespace acctraj {

struct DatasetSummary {
    std::size_t n_platoons = 0;
    std::size_t n_pairs = 0;         // after filtering
    std::size_t n_ev_followers = 0;
    std::size_t n_icev_followers = 0;
    double total_pair_hours = 0.0;
    double total_platoon_hours = 0.0;
};

struct ClassEfficiency {
    FiveNumberSummary asv_summary;
    std::vector<AsvResult> asv_per_pair;
    std::optional<VsFit> vs_fit;
    std::vector<std::pair<double, double>> vs_points;  // (spacing, speed)
};

struct RunReport {
    PipelineConfig config;
    DatasetSummary dataset;
    SimilarityMatrix similarity;
    SelectionResult selection;
    std::map<FollowerClass, ClassEfficiency> efficiency;
    ThresholdSweep ttc_sweep;
    ThresholdSweep drac_sweep;
    std::vector<PlatoonEmissionReport> emission_reports;
    std::vector<PlatoonComparison> emission_comparisons;
    std::vector<std::string> warnings;
    // Selected pairs kept for the per-pair time-series export.
    std::vector<LeaderFollowerPair> selected_pairs;
};

// ingest -> kinematics -> similarity -> {efficiency, safety} on the selected
// pairs, emissions on configured platoons. Deterministic given config and
// inputs, at any thread count.
RunReport run_pipeline(const PipelineConfig& config);

// Structured JSON summary plus per-table delimited files.
std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& dir);

// Intermediate stages, exposed for the CLI subcommands.
struct PlatoonFollowers {
    Propulsion lead_propulsion = Propulsion::Other;
    std::vector<VehicleTrajectory> followers;  // trimmed, all propulsion types
};

struct IngestedDataset {
    std::vector<Platoon> platoons;              // post gap-repair
    std::vector<LeaderFollowerPair> pairs;      // filtered + trimmed
    std::map<std::string, PlatoonFollowers> by_platoon;
    DatasetSummary summary;
    std::vector<std::string> warnings;
};

IngestedDataset ingest_dataset(const PipelineConfig& config);

struct SimilarityStage {
    SimilarityMatrix matrix;
    SelectionResult selection;
};

SimilarityStage similarity_stage(const IngestedDataset& data,
                                 const PipelineConfig& config);

// Content hash of the input files plus the similarity-relevant config, used
// to key the on-disk DTW cache.
std::string similarity_cache_key(const PipelineConfig& config);

void write_similarity_matrix(const SimilarityMatrix& m,
                             const std::filesystem::path& path);
SimilarityMatrix read_similarity_matrix(const std::filesystem::path& path);

// Round-trippable trajectory export in the ingest column layout; values are
// printed with enough digits to reparse bit-for-bit.
void write_platoon_csv(const Platoon& p, const std::filesystem::path& path);

}  // namespace acctraj
