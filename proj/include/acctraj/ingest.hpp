#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "acctraj/types.hpp"

namespace acctraj {

// Per-position column mapping for one input file. Positions are 1-based in
// the mapping file; position 1 is the platoon leader.
struct VehicleMapping {
    std::string id;
    std::string speed_col;        // defaults to "Speed<pos>"
    std::string ivs_col;          // defaults to "IVS<pos>"; unused for pos 1
    std::string model;
    std::string mode;             // "ACC" or "Human"
    std::string acc_gap_setting;  // optional free text
};

struct SchemaMapping {
    std::string platoon_id;
    std::string time_col = "Time";
    char delimiter = ',';         // ',' or '\t'
    std::vector<VehicleMapping> vehicles;

    static SchemaMapping load(const std::filesystem::path& path);
    static SchemaMapping parse(std::istream& in, const std::string& origin);
};

// Vehicle-model -> propulsion lookup, shipped as data and overridable.
class PropulsionTable {
public:
    static PropulsionTable load(const std::filesystem::path& path);

    void set(const std::string& model, Propulsion p);
    // Unknown models classify as Other.
    Propulsion classify(const std::string& model) const;

private:
    std::map<std::string, Propulsion> by_model_;
};

struct IngestWarning {
    std::string message;
};

struct ParseResult {
    Platoon platoon;
    std::vector<IngestWarning> warnings;
};

// Builds a mapping from the file's own header, assuming the public-dataset
// column layout (Time, Speed<i>, IVS<i>).
SchemaMapping infer_schema(const std::filesystem::path& path);

ParseResult parse_trajectory_file(const std::filesystem::path& path,
                                  const SchemaMapping& schema,
                                  const PropulsionTable& propulsion);
ParseResult parse_trajectory_stream(std::istream& in, const std::string& origin,
                                    const SchemaMapping& schema,
                                    const PropulsionTable& propulsion);

// Linear interpolation onto the 0.1 s grid for gaps <= max_gap_s; longer
// gaps split the series into independent segments.
std::vector<RawSeries> repair_gaps(const RawSeries& series, double max_gap_s = 0.5);

// N-vehicle platoon -> N-1 consecutive pairs, each clipped to the common
// time window of its two members. Speeds are smoothed and accelerations
// derived per vehicle over the full record before clipping.
std::vector<LeaderFollowerPair> decompose_platoon(const Platoon& p, int smooth_window = 10);

struct FilterOptions {
    double min_overlap_s = 30.0;
};

// Keeps pairs whose follower is an EV or ICEV under ACC with enough overlap.
std::vector<LeaderFollowerPair> filter_pairs(const std::vector<LeaderFollowerPair>& pairs,
                                             const FilterOptions& opts = {});

}  // namespace acctraj
