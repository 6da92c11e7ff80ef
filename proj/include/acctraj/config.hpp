#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "acctraj/emissions.hpp"

namespace acctraj {

// Resolved pipeline parameters. Resolution order: defaults < config file <
// command-line flags.
struct PipelineConfig {
    // One mapping file per input file, matched by order.
    std::vector<std::filesystem::path> inputs;
    std::vector<std::filesystem::path> mappings;
    std::optional<std::filesystem::path> propulsion_table;

    double max_gap_s = 0.5;
    double min_overlap_s = 30.0;
    int smooth_window = 10;
    double trim_head_s = 10.0;
    double trim_tail_s = 10.0;
    double low_speed_floor = 0.1;

    double dtw_hz = 1.0;                 // downsample rate for the pairwise stage
    std::optional<double> dtw_band;      // Sakoe-Chiba-style window radius
    std::size_t select_k = 10;
    bool similarity_on_follower = false; // default compares leader speed series

    double jam_spacing = 3.57;           // m
    std::optional<double> desired_speed; // m/s; unset -> p95 of follower speeds
    std::optional<double> v_star;        // m/s; unset -> per-pair mean speed

    std::vector<double> ttc_thresholds;  // defaults 1.0..4.0 step 0.5
    std::vector<double> drac_thresholds; // defaults 2.0..5.0 step 0.5

    std::optional<std::filesystem::path> emission_coefficients;
    EmissionForm emission_form = EmissionForm::LogLinear;
    // Platoon ids to report; empty = every platoon with an ICEV follower.
    std::vector<std::string> emission_platoons;

    std::filesystem::path output_dir = "out";
    unsigned threads = 1;

    void validate() const;  // throws ConfigError

    // key = value text file; unknown keys are a ConfigError.
    static PipelineConfig load(const std::filesystem::path& path);
    static PipelineConfig parse(std::istream& in, const std::string& origin);
    void apply_line(const std::string& key, const std::string& value,
                    const std::string& origin);
};

}  // namespace acctraj
