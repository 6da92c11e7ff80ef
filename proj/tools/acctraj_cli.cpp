#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acctraj/errors.hpp"
#include "acctraj/format.hpp"
#include "acctraj/pipeline.hpp"

namespace fs = std::filesystem;
using namespace acctraj;

namespace {

struct CliOverrides {
    std::optional<std::string> config_path;
    std::vector<std::string> inputs;
    std::vector<std::string> mappings;
    std::optional<std::string> propulsion_table;
    std::optional<std::string> output_dir;
    std::optional<double> dtw_hz;
    std::optional<double> dtw_band;
    std::optional<std::size_t> select_k;
    std::optional<std::string> similarity_signal;
    std::optional<double> jam_spacing;
    std::optional<double> desired_speed;
    std::optional<double> v_star;
    std::optional<std::string> coefficients;
    std::optional<std::string> emission_form;
    std::vector<std::string> emission_platoons;
    std::optional<double> trim_head_s;
    std::optional<double> trim_tail_s;
    std::optional<int> smooth_window;
    std::optional<unsigned> threads;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("-c,--config", o.config_path,
                    "Config file (default: $ACCTRAJ_CONFIG when set)");
    cmd->add_option("-i,--input", o.inputs, "Trajectory file(s)");
    cmd->add_option("-m,--mapping", o.mappings, "Schema mapping file(s), one per input");
    cmd->add_option("--propulsion-table", o.propulsion_table,
                    "Model-to-propulsion lookup CSV");
    cmd->add_option("-o,--output-dir", o.output_dir, "Output directory");
    cmd->add_option("--dtw-hz", o.dtw_hz, "Downsample rate for the DTW stage");
    cmd->add_option("--dtw-band", o.dtw_band, "DTW band radius (samples)");
    cmd->add_option("--select-k", o.select_k, "Pairs selected per follower class");
    cmd->add_option("--similarity-signal", o.similarity_signal,
                    "Compared speed series: leader or follower");
    cmd->add_option("--jam-spacing", o.jam_spacing, "v-s fit jam spacing (m)");
    cmd->add_option("--desired-speed", o.desired_speed,
                    "v-s fit desired speed (m/s); default p95 of follower speeds");
    cmd->add_option("--v-star", o.v_star,
                    "ASV desired cruising speed (m/s); default per-pair mean");
    cmd->add_option("--coefficients", o.coefficients, "Emission coefficient file");
    cmd->add_option("--emission-form", o.emission_form,
                    "Emission model form: loglinear or literal");
    cmd->add_option("--emission-platoon", o.emission_platoons,
                    "Platoon id(s) for the emission stage");
    cmd->add_option("--trim-head", o.trim_head_s, "Seconds trimmed from each start");
    cmd->add_option("--trim-tail", o.trim_tail_s, "Seconds trimmed from each end");
    cmd->add_option("--smooth-window", o.smooth_window, "Moving-average window, samples");
    cmd->add_option("-j,--threads", o.threads, "Worker threads for the DTW stage");
}

PipelineConfig resolve_config(const CliOverrides& o) {
    PipelineConfig cfg;
    std::optional<std::string> path = o.config_path;
    if (!path) {
        if (const char* env = std::getenv("ACCTRAJ_CONFIG")) path = env;
    }
    if (path) cfg = PipelineConfig::load(*path);

    for (const auto& p : o.inputs) cfg.inputs.emplace_back(p);
    for (const auto& p : o.mappings) cfg.mappings.emplace_back(p);
    if (o.propulsion_table) cfg.propulsion_table = *o.propulsion_table;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    if (o.dtw_hz) cfg.dtw_hz = *o.dtw_hz;
    if (o.dtw_band) cfg.dtw_band = *o.dtw_band;
    if (o.select_k) cfg.select_k = *o.select_k;
    if (o.similarity_signal)
        cfg.apply_line("similarity_signal", *o.similarity_signal, "command line");
    if (o.jam_spacing) cfg.jam_spacing = *o.jam_spacing;
    if (o.desired_speed) cfg.desired_speed = *o.desired_speed;
    if (o.v_star) cfg.v_star = *o.v_star;
    if (o.coefficients) cfg.emission_coefficients = *o.coefficients;
    if (o.emission_form)
        cfg.apply_line("emission_form", *o.emission_form, "command line");
    if (!o.emission_platoons.empty()) cfg.emission_platoons = o.emission_platoons;
    if (o.trim_head_s) cfg.trim_head_s = *o.trim_head_s;
    if (o.trim_tail_s) cfg.trim_tail_s = *o.trim_tail_s;
    if (o.smooth_window) cfg.smooth_window = *o.smooth_window;
    if (o.threads) cfg.threads = *o.threads;

    cfg.validate();
    return cfg;
}

void print_summary(const DatasetSummary& s) {
    std::cout << "platoons: " << s.n_platoons << "\n"
              << "pairs: " << s.n_pairs << "\n"
              << "ev_followers: " << s.n_ev_followers << "\n"
              << "icev_followers: " << s.n_icev_followers << "\n"
              << "pair_hours: " << format_number(s.total_pair_hours) << "\n"
              << "platoon_hours: " << format_number(s.total_platoon_hours) << "\n";
}

// Reuses the cached matrix when the inputs and similarity config are
// unchanged.
SimilarityStage similarity_with_cache(const IngestedDataset& data,
                                      const PipelineConfig& cfg) {
    const fs::path cache_dir = cfg.output_dir / "cache";
    const fs::path cache_file = cache_dir / ("dtw_" + similarity_cache_key(cfg) + ".csv");
    if (fs::exists(cache_file)) {
        SimilarityStage stage;
        stage.matrix = read_similarity_matrix(cache_file);
        std::map<std::string, FollowerClass> cls;
        for (const auto& pair : data.pairs)
            cls[pair.pair_id] = pair.follower.meta.propulsion == Propulsion::EV
                                    ? FollowerClass::EV
                                    : FollowerClass::ICEV;
        stage.selection = select_most_similar(
            stage.matrix, [&](const std::string& id) { return cls.at(id); },
            cfg.select_k);
        std::cout << "similarity matrix loaded from cache\n";
        return stage;
    }
    auto stage = similarity_stage(data, cfg);
    fs::create_directories(cache_dir);
    write_similarity_matrix(stage.matrix, cache_file);
    return stage;
}

int run(int argc, char** argv) {
    CLI::App app{"Car-following trajectory analytics for ACC-equipped EV and ICEV "
                 "followers"};
    app.require_subcommand(1);

    CliOverrides o;
    auto* ingest_cmd =
        app.add_subcommand("ingest-check", "Parse, filter and summarize the inputs");
    auto* sim_cmd =
        app.add_subcommand("similarity", "Compute the pairwise DTW matrix and selection");
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Efficiency and safety metrics on selected pairs");
    auto* emissions_cmd =
        app.add_subcommand("emissions", "Platoon-level emission rates and comparisons");
    auto* full_cmd = app.add_subcommand("full-run", "Run the whole pipeline");
    for (auto* cmd : {ingest_cmd, sim_cmd, analyze_cmd, emissions_cmd, full_cmd})
        add_common_options(cmd, o);

    CLI11_PARSE(app, argc, argv);

    PipelineConfig cfg = resolve_config(o);

    if (ingest_cmd->parsed()) {
        auto data = ingest_dataset(cfg);
        print_summary(data.summary);
        for (const auto& w : data.warnings) std::cerr << "warning: " << w << "\n";
        return 0;
    }

    if (sim_cmd->parsed()) {
        auto data = ingest_dataset(cfg);
        auto stage = similarity_with_cache(data, cfg);
        fs::create_directories(cfg.output_dir);
        write_similarity_matrix(stage.matrix, cfg.output_dir / "dtw_matrix.csv");
        std::cout << "selected EV pairs:";
        for (const auto& id : stage.selection.ev_ids) std::cout << ' ' << id;
        std::cout << "\nselected ICEV pairs:";
        for (const auto& id : stage.selection.icev_ids) std::cout << ' ' << id;
        std::cout << "\nmatrix written to "
                  << (cfg.output_dir / "dtw_matrix.csv").string() << "\n";
        return 0;
    }

    // analyze, emissions and full-run all execute the pipeline; the
    // subcommand picks which sections must be present.
    if (emissions_cmd->parsed() && !cfg.emission_coefficients)
        throw ConfigError("emissions: --coefficients (or emission_coefficients) required");

    RunReport report = run_pipeline(cfg);
    auto files = emit_report(report, cfg.output_dir);

    if (emissions_cmd->parsed() && report.emission_reports.empty())
        throw DataError("emissions: no reportable platoons (no ICEV followers)");

    print_summary(report.dataset);
    std::cout << files.size() << " files written to " << cfg.output_dir.string() << "\n";
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";

    // Trajectory export for downstream tooling; reparses bit-for-bit.
    if (full_cmd->parsed()) {
        auto data_dir = cfg.output_dir / "trajectories";
        fs::create_directories(data_dir);
        auto data = ingest_dataset(cfg);
        for (const auto& p : data.platoons) {
            std::string name = p.platoon_id;
            for (char& c : name)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_')
                    c = '_';
            write_platoon_csv(p, data_dir / (name + ".csv"));
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
