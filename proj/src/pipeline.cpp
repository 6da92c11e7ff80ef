#include "acctraj/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "acctraj/errors.hpp"
#include "acctraj/format.hpp"
#include "acctraj/kinematics.hpp"

namespace acctraj {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string full_precision(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Longest contiguous segment after gap repair; shorter segments are dropped
// rather than stitched.
RawSeries longest_segment(const RawSeries& series, double max_gap_s) {
    auto segments = repair_gaps(series, max_gap_s);
    std::size_t best = 0;
    for (std::size_t i = 1; i < segments.size(); ++i)
        if (segments[i].size() > segments[best].size()) best = i;
    return segments[best];
}

double percentile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double rank = p * (v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    return v[lo] + (rank - lo) * (v[hi] - v[lo]);
}

double native_rate(const std::vector<double>& t) {
    if (t.size() < 2) return 10.0;
    std::vector<double> dts;
    dts.reserve(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) dts.push_back(t[i] - t[i - 1]);
    std::nth_element(dts.begin(), dts.begin() + dts.size() / 2, dts.end());
    const double med = dts[dts.size() / 2];
    return med > 0.0 ? 1.0 / med : 10.0;
}

std::string sanitize_filename(const std::string& id) {
    std::string out = id;
    for (char& c : out)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' &&
            c != '.')
            c = '_';
    return out;
}

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_mix(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
}

void fnv_mix_string(std::uint64_t& h, const std::string& s) {
    fnv_mix(h, s.data(), s.size());
}

}  // namespace

IngestedDataset ingest_dataset(const PipelineConfig& config) {
    config.validate();

    PropulsionTable propulsion;
    if (config.propulsion_table)
        propulsion = PropulsionTable::load(*config.propulsion_table);

    IngestedDataset data;
    TrimOptions trim{config.trim_head_s, config.trim_tail_s, config.low_speed_floor};

    for (std::size_t i = 0; i < config.inputs.size(); ++i) {
        const auto& path = config.inputs[i];
        SchemaMapping schema = i < config.mappings.size()
                                   ? SchemaMapping::load(config.mappings[i])
                                   : infer_schema(path);
        auto parsed = parse_trajectory_file(path, schema, propulsion);
        for (const auto& w : parsed.warnings) data.warnings.push_back(w.message);

        Platoon platoon = std::move(parsed.platoon);
        for (auto& veh : platoon.vehicles)
            veh.samples = longest_segment(veh.samples, config.max_gap_s);

        auto pairs = decompose_platoon(platoon, config.smooth_window);
        auto retained = filter_pairs(pairs, {config.min_overlap_s});

        PlatoonFollowers pf;
        pf.lead_propulsion = platoon.vehicles.front().meta.propulsion;

        double platoon_lo = platoon.vehicles.front().samples.front().t;
        double platoon_hi = platoon.vehicles.front().samples.back().t;
        for (const auto& veh : platoon.vehicles) {
            platoon_lo = std::min(platoon_lo, veh.samples.front().t);
            platoon_hi = std::max(platoon_hi, veh.samples.back().t);
        }

        std::size_t retained_here = 0;
        for (const auto& pair : retained) {
            LeaderFollowerPair trimmed;
            try {
                trimmed = trim_pair(pair, trim);
            } catch (const DataError& e) {
                data.warnings.push_back(std::string("dropped pair ") + pair.pair_id +
                                        ": " + e.what());
                continue;
            }
            data.summary.total_pair_hours += trimmed.follower.duration() / 3600.0;
            if (trimmed.follower.meta.propulsion == Propulsion::EV)
                ++data.summary.n_ev_followers;
            else
                ++data.summary.n_icev_followers;
            data.pairs.push_back(std::move(trimmed));
            ++retained_here;
        }

        // Followers for the emission stage keep every propulsion type.
        for (const auto& pair : pairs) {
            try {
                pf.followers.push_back(trim_pair(pair, trim).follower);
            } catch (const DataError&) {
            }
        }

        if (retained_here > 0) {
            ++data.summary.n_platoons;
            data.summary.total_platoon_hours += (platoon_hi - platoon_lo) / 3600.0;
        }
        data.by_platoon[platoon.platoon_id] = std::move(pf);
        data.platoons.push_back(std::move(platoon));
    }

    data.summary.n_pairs = data.pairs.size();
    return data;
}

SimilarityStage similarity_stage(const IngestedDataset& data,
                                 const PipelineConfig& config) {
    if (data.pairs.size() < 2)
        throw DataError("similarity: need at least 2 retained pairs, have " +
                        std::to_string(data.pairs.size()));

    std::vector<std::pair<std::string, std::vector<double>>> signals;
    signals.reserve(data.pairs.size());
    for (const auto& pair : data.pairs) {
        const VehicleTrajectory& traj =
            config.similarity_on_follower ? pair.follower : pair.leader;
        signals.emplace_back(pair.pair_id,
                             downsample(traj.v, native_rate(traj.t), config.dtw_hz));
    }

    SimilarityStage stage;
    stage.matrix = pairwise_matrix(signals, config.dtw_band, config.threads);

    std::map<std::string, FollowerClass> cls;
    for (const auto& pair : data.pairs)
        cls[pair.pair_id] = pair.follower.meta.propulsion == Propulsion::EV
                                ? FollowerClass::EV
                                : FollowerClass::ICEV;
    stage.selection = select_most_similar(
        stage.matrix, [&](const std::string& id) { return cls.at(id); }, config.select_k);
    return stage;
}

std::string similarity_cache_key(const PipelineConfig& config) {
    std::uint64_t h = kFnvOffset;
    for (const auto& path : config.inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot open input file " + path.string());
        char buf[1 << 16];
        while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
            fnv_mix(h, buf, static_cast<std::size_t>(in.gcount()));
    }
    for (const auto& path : config.mappings) fnv_mix_string(h, path.string());
    auto mix_d = [&](double x) { fnv_mix(h, &x, sizeof(x)); };
    mix_d(config.dtw_hz);
    mix_d(config.dtw_band.value_or(-1.0));
    mix_d(static_cast<double>(config.select_k));
    mix_d(config.similarity_on_follower ? 1.0 : 0.0);
    mix_d(static_cast<double>(config.smooth_window));
    mix_d(config.trim_head_s);
    mix_d(config.trim_tail_s);
    mix_d(config.low_speed_floor);
    mix_d(config.max_gap_s);
    mix_d(config.min_overlap_s);

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunReport run_pipeline(const PipelineConfig& config) {
    RunReport report;
    report.config = config;
    report.config.ttc_thresholds = config.ttc_thresholds.empty()
                                       ? default_thresholds(SafetyMetric::TTC)
                                       : config.ttc_thresholds;
    report.config.drac_thresholds = config.drac_thresholds.empty()
                                        ? default_thresholds(SafetyMetric::DRAC)
                                        : config.drac_thresholds;

    auto data = ingest_dataset(config);
    report.dataset = data.summary;
    report.warnings = data.warnings;
    if (data.pairs.empty()) throw DataError("no pairs retained after filtering");

    auto stage = similarity_stage(data, config);
    report.similarity = std::move(stage.matrix);
    report.selection = std::move(stage.selection);

    std::map<std::string, const LeaderFollowerPair*> by_id;
    for (const auto& pair : data.pairs) by_id[pair.pair_id] = &pair;

    auto class_ids = [&](FollowerClass cls) -> const std::vector<std::string>& {
        return cls == FollowerClass::EV ? report.selection.ev_ids
                                        : report.selection.icev_ids;
    };

    // Efficiency + safety on the selected pairs.
    std::map<FollowerClass, std::vector<SafetySeries>> safety_grouped;
    for (FollowerClass cls : {FollowerClass::EV, FollowerClass::ICEV}) {
        const auto& ids = class_ids(cls);
        if (ids.empty()) continue;

        ClassEfficiency eff;
        std::vector<double> asv_values;
        std::vector<double> follower_speeds;
        for (const auto& id : ids) {
            const LeaderFollowerPair& pair = *by_id.at(id);
            report.selected_pairs.push_back(pair);

            const double v_star =
                config.v_star ? *config.v_star : estimate_v_star(pair.follower.v);
            AsvResult asv = compute_asv(pair.follower.v, pair.follower.t, v_star);
            asv.pair_id = id;
            asv_values.push_back(asv.asv);
            eff.asv_per_pair.push_back(asv);

            for (std::size_t k = 0; k < pair.follower.size(); ++k) {
                if (!pair.follower.s.empty() && pair.follower.s[k] > 0.0)
                    eff.vs_points.emplace_back(pair.follower.s[k], pair.follower.v[k]);
                follower_speeds.push_back(pair.follower.v[k]);
            }
            safety_grouped[cls].push_back(safety_series(pair));
        }
        eff.asv_summary = summarize_group(asv_values);

        const double desired = config.desired_speed ? *config.desired_speed
                                                    : percentile(follower_speeds, 0.95);
        try {
            eff.vs_fit = fit_vs_curve(eff.vs_points, config.jam_spacing, desired);
        } catch (const DataError& e) {
            report.warnings.push_back(std::string("v-s fit skipped for ") +
                                      (cls == FollowerClass::EV ? "EV" : "ICEV") +
                                      " followers: " + e.what());
        }
        report.efficiency[cls] = std::move(eff);
    }

    report.ttc_sweep =
        sweep_thresholds(safety_grouped, SafetyMetric::TTC, report.config.ttc_thresholds);
    report.drac_sweep = sweep_thresholds(safety_grouped, SafetyMetric::DRAC,
                                         report.config.drac_thresholds);

    // Emissions on configured platoons.
    if (config.emission_coefficients) {
        auto table = EmissionCoefficientTable::load(*config.emission_coefficients);
        std::vector<std::string> platoon_ids = config.emission_platoons;
        if (platoon_ids.empty())
            for (const auto& [id, pf] : data.by_platoon) platoon_ids.push_back(id);

        for (const auto& id : platoon_ids) {
            auto it = data.by_platoon.find(id);
            if (it == data.by_platoon.end())
                throw DataError("emissions: unknown platoon id '" + id + "'");
            const auto& pf = it->second;
            bool has_icev = std::any_of(
                pf.followers.begin(), pf.followers.end(),
                [](const auto& f) { return f.meta.propulsion == Propulsion::ICEV; });
            if (!has_icev) {
                report.warnings.push_back("platoon " + id +
                                          " skipped: no ICEV followers");
                continue;
            }
            report.emission_reports.push_back(platoon_average_moe(
                id, pf.lead_propulsion, pf.followers, table, config.emission_form));
        }
        bool has_ev_led = false, has_icev_led = false;
        for (const auto& r : report.emission_reports) {
            has_ev_led |= r.lead_propulsion == Propulsion::EV;
            has_icev_led |= r.lead_propulsion == Propulsion::ICEV;
        }
        if (has_ev_led && has_icev_led)
            report.emission_comparisons = compare_platoons(report.emission_reports);
    }

    return report;
}

void write_similarity_matrix(const SimilarityMatrix& m,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "id";
    for (const auto& id : m.ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.ids.size(); ++j)
            out << ',' << full_precision(m.dist[i][j]);
        out << '\n';
    }
}

SimilarityMatrix read_similarity_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());

    SimilarityMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty matrix", 1);
    std::istringstream header(line);
    std::string field;
    std::getline(header, field, ',');  // "id"
    while (std::getline(header, field, ',')) m.ids.push_back(field);

    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::getline(row, field, ',');
        std::vector<double> vals;
        while (std::getline(row, field, ',')) vals.push_back(std::stod(field));
        if (vals.size() != m.ids.size())
            throw ParseError(path.string() + ": ragged matrix row", lineno);
        m.dist.push_back(std::move(vals));
    }
    if (m.dist.size() != m.ids.size())
        throw ParseError(path.string() + ": matrix row count mismatch");

    m.medians.resize(m.ids.size());
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < m.ids.size(); ++j)
            if (j != i) row.push_back(m.dist[i][j]);
        std::sort(row.begin(), row.end());
        const std::size_t n = row.size();
        m.medians[i] = n % 2 == 1 ? row[n / 2] : 0.5 * (row[n / 2 - 1] + row[n / 2]);
    }
    return m;
}

void write_platoon_csv(const Platoon& p, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "Time";
    for (std::size_t i = 0; i < p.vehicles.size(); ++i) {
        out << ",Speed" << i + 1;
        if (i > 0) out << ",IVS" << i + 1;
    }
    out << '\n';
    const std::size_t n = p.vehicles.front().samples.size();
    for (std::size_t k = 0; k < n; ++k) {
        out << full_precision(p.vehicles.front().samples[k].t);
        for (std::size_t i = 0; i < p.vehicles.size(); ++i) {
            const auto& smp = p.vehicles[i].samples[k];
            out << ',' << full_precision(smp.u);
            if (i > 0) out << ',' << full_precision(smp.ivs.value_or(1.0));
        }
        out << '\n';
    }
}

namespace {

ordered_json config_to_json(const PipelineConfig& c) {
    ordered_json j;
    for (const auto& p : c.inputs) j["input"].push_back(p.string());
    for (const auto& p : c.mappings) j["mapping"].push_back(p.string());
    if (c.propulsion_table) j["propulsion_table"] = c.propulsion_table->string();
    j["max_gap_s"] = c.max_gap_s;
    j["min_overlap_s"] = c.min_overlap_s;
    j["smooth_window"] = c.smooth_window;
    j["trim_head_s"] = c.trim_head_s;
    j["trim_tail_s"] = c.trim_tail_s;
    j["low_speed_floor"] = c.low_speed_floor;
    j["dtw_hz"] = c.dtw_hz;
    if (c.dtw_band) j["dtw_band"] = *c.dtw_band;
    j["select_k"] = c.select_k;
    j["similarity_signal"] = c.similarity_on_follower ? "follower" : "leader";
    j["jam_spacing"] = c.jam_spacing;
    if (c.desired_speed) j["desired_speed"] = *c.desired_speed;
    if (c.v_star) j["v_star"] = *c.v_star;
    j["ttc_thresholds"] = c.ttc_thresholds;
    j["drac_thresholds"] = c.drac_thresholds;
    if (c.emission_coefficients)
        j["emission_coefficients"] = c.emission_coefficients->string();
    j["emission_form"] =
        c.emission_form == EmissionForm::LogLinear ? "loglinear" : "literal";
    j["emission_platoons"] = c.emission_platoons;
    // Runtime-only settings (thread count, output location) are deliberately
    // not echoed: the report content must not depend on them.
    return j;
}

void write_sweep_csv(const ThresholdSweep& sweep, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "threshold,ev_mean_proportion_pct,icev_mean_proportion_pct,change_pct\n";
    for (const auto& row : sweep.rows) {
        out << format_number(row.threshold);
        auto cell = [&](FollowerClass cls) {
            auto it = row.mean_proportion.find(cls);
            out << ',' << (it == row.mean_proportion.end() ? ""
                                                           : format_number(it->second));
        };
        cell(FollowerClass::EV);
        cell(FollowerClass::ICEV);
        out << ',' << (row.change_percent ? format_number(*row.change_percent) : "")
            << '\n';
    }
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const RunReport& report,
                                               const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir))
        throw DataError("cannot create output directory " + dir.string());

    std::vector<std::filesystem::path> files;
    auto record = [&](const std::filesystem::path& p) {
        files.push_back(p);
        return p;
    };

    // Table 1 layout: five-number ASV summary per class.
    {
        auto path = record(dir / "asv_summary.csv");
        std::ofstream out(path);
        if (!out) throw DataError("cannot write " + path.string());
        out << "statistic,ev_asv_ms,icev_asv_ms\n";
        auto cell = [&](FollowerClass cls, auto pick) -> std::string {
            auto it = report.efficiency.find(cls);
            if (it == report.efficiency.end()) return "";
            return format_number(pick(it->second.asv_summary));
        };
        const std::pair<const char*, double FiveNumberSummary::*> rows[] = {
            {"min", &FiveNumberSummary::min},
            {"p25", &FiveNumberSummary::p25},
            {"median", &FiveNumberSummary::median},
            {"p75", &FiveNumberSummary::p75},
            {"max", &FiveNumberSummary::max},
        };
        for (const auto& [name, member] : rows) {
            auto pick = [member](const FiveNumberSummary& s) { return s.*member; };
            out << name << ',' << cell(FollowerClass::EV, pick) << ','
                << cell(FollowerClass::ICEV, pick) << '\n';
        }
    }

    write_sweep_csv(report.ttc_sweep, record(dir / "ttc_sweep.csv"));
    write_sweep_csv(report.drac_sweep, record(dir / "drac_sweep.csv"));
    write_similarity_matrix(report.similarity, record(dir / "dtw_matrix.csv"));

    // v-s fits and scatter points per class.
    {
        auto path = record(dir / "vs_fit.csv");
        std::ofstream out(path);
        out << "class,jam_spacing_m,critical_spacing_m,desired_speed_ms,slope,"
               "residual_rmse_ms,n_points,boundary_warning\n";
        for (const auto& [cls, eff] : report.efficiency) {
            if (!eff.vs_fit) continue;
            const VsFit& f = *eff.vs_fit;
            out << (cls == FollowerClass::EV ? "EV" : "ICEV") << ','
                << format_number(f.jam_spacing) << ',' << format_number(f.critical_spacing)
                << ',' << format_number(f.desired_speed) << ',' << format_number(f.slope)
                << ',' << format_number(f.residual_rmse) << ',' << f.n_points << ','
                << (f.boundary_warning ? 1 : 0) << '\n';
        }
    }
    for (const auto& [cls, eff] : report.efficiency) {
        const std::string name =
            cls == FollowerClass::EV ? "vs_scatter_ev.csv" : "vs_scatter_icev.csv";
        auto path = record(dir / name);
        std::ofstream out(path);
        out << "spacing_m,speed_ms\n";
        for (const auto& [s, v] : eff.vs_points)
            out << format_number(s) << ',' << format_number(v) << '\n';
    }

    // Per-pair time series for plotting.
    {
        std::filesystem::create_directories(dir / "pairs");
        for (const auto& pair : report.selected_pairs) {
            auto path = record(dir / "pairs" / (sanitize_filename(pair.pair_id) + ".csv"));
            std::ofstream out(path);
            out << "t_s,leader_v_ms,follower_v_ms,leader_a_ms2,follower_a_ms2,"
                   "spacing_m,dv_ms\n";
            const auto features = extract_features(pair);
            for (std::size_t k = 0; k < features.size(); ++k) {
                const auto& f = features[k];
                out << format_number(pair.follower.t[k]) << ',' << format_number(f.v_l)
                    << ',' << format_number(f.v_f) << ',' << format_number(f.a_l) << ','
                    << format_number(f.a_f) << ',' << format_number(f.s) << ','
                    << format_number(f.dv) << '\n';
            }
        }
    }

    // Table 4 layout, when the emission stage ran.
    if (!report.emission_reports.empty()) {
        auto path = record(dir / "emissions.csv");
        std::ofstream out(path);
        out << "platoon,lead,fuel_l_per_s_veh,hc_g_per_s_veh,co_g_per_s_veh,"
               "nox_g_per_s_veh\n";
        for (const auto& r : report.emission_reports) {
            out << r.platoon_id << ',' << to_string(r.lead_propulsion) << ','
                << format_number(r.rates.at(EmissionType::Fuel)) << ','
                << format_number(r.rates.at(EmissionType::HC)) << ','
                << format_number(r.rates.at(EmissionType::CO)) << ','
                << format_number(r.rates.at(EmissionType::NOx)) << '\n';
        }
        for (const auto& cmp : report.emission_comparisons) {
            out << "change:" << cmp.icev_led_id << "->" << cmp.ev_led_id << ",,"
                << format_number(cmp.change_percent.at(EmissionType::Fuel)) << ','
                << format_number(cmp.change_percent.at(EmissionType::HC)) << ','
                << format_number(cmp.change_percent.at(EmissionType::CO)) << ','
                << format_number(cmp.change_percent.at(EmissionType::NOx)) << '\n';
        }
    }

    // Structured summary last, with the manifest of emitted files.
    {
        ordered_json j;
        j["config"] = config_to_json(report.config);
        j["dataset"] = {
            {"platoons", report.dataset.n_platoons},
            {"pairs", report.dataset.n_pairs},
            {"ev_followers", report.dataset.n_ev_followers},
            {"icev_followers", report.dataset.n_icev_followers},
            {"pair_hours", report.dataset.total_pair_hours},
            {"platoon_hours", report.dataset.total_platoon_hours},
        };
        j["selection"] = {{"k", report.selection.k},
                          {"ev", report.selection.ev_ids},
                          {"icev", report.selection.icev_ids}};
        for (const auto& [cls, eff] : report.efficiency) {
            ordered_json e;
            e["asv_summary"] = {{"min", eff.asv_summary.min},
                                {"p25", eff.asv_summary.p25},
                                {"median", eff.asv_summary.median},
                                {"p75", eff.asv_summary.p75},
                                {"max", eff.asv_summary.max}};
            if (eff.vs_fit) {
                e["vs_fit"] = {{"jam_spacing", eff.vs_fit->jam_spacing},
                               {"critical_spacing", eff.vs_fit->critical_spacing},
                               {"desired_speed", eff.vs_fit->desired_speed},
                               {"slope", eff.vs_fit->slope},
                               {"residual_rmse", eff.vs_fit->residual_rmse},
                               {"n_points", eff.vs_fit->n_points},
                               {"boundary_warning", eff.vs_fit->boundary_warning}};
            } else {
                e["vs_fit"] = nullptr;
            }
            j["efficiency"][cls == FollowerClass::EV ? "EV" : "ICEV"] = std::move(e);
        }
        auto sweep_json = [](const ThresholdSweep& sweep) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : sweep.rows) {
                ordered_json r;
                r["threshold"] = row.threshold;
                for (const auto& [cls, v] : row.mean_proportion)
                    r[cls == FollowerClass::EV ? "EV" : "ICEV"] = v;
                if (row.change_percent) r["change_pct"] = *row.change_percent;
                rows.push_back(std::move(r));
            }
            return rows;
        };
        j["safety"] = {{"ttc", sweep_json(report.ttc_sweep)},
                       {"drac", sweep_json(report.drac_sweep)}};
        if (!report.emission_reports.empty()) {
            ordered_json em = ordered_json::array();
            for (const auto& r : report.emission_reports) {
                ordered_json e;
                e["platoon"] = r.platoon_id;
                e["lead"] = to_string(r.lead_propulsion);
                for (const auto& [type, rate] : r.rates) e[to_string(type)] = rate;
                e["n_icev_followers"] = r.n_icev_followers;
                em.push_back(std::move(e));
            }
            j["emissions"] = std::move(em);
            ordered_json cmps = ordered_json::array();
            for (const auto& cmp : report.emission_comparisons) {
                ordered_json c;
                c["icev_led"] = cmp.icev_led_id;
                c["ev_led"] = cmp.ev_led_id;
                for (const auto& [type, pct] : cmp.change_percent)
                    c[to_string(type)] = pct;
                cmps.push_back(std::move(c));
            }
            j["emission_comparisons"] = std::move(cmps);
        } else {
            j["emissions"] = nullptr;  // section omitted
        }
        j["warnings"] = report.warnings;
        ordered_json manifest = ordered_json::array();
        for (const auto& p : files)
            manifest.push_back(std::filesystem::relative(p, dir).generic_string());
        j["files"] = std::move(manifest);

        auto path = dir / "report.json";
        std::ofstream out(path);
        if (!out) throw DataError("cannot write " + path.string());
        out << j.dump(2) << '\n';
        files.push_back(path);
    }

    return files;
}

}  // namespace acctraj
