#include "acctraj/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "acctraj/errors.hpp"
#include "acctraj/safety.hpp"

namespace acctraj {

namespace {

std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) {
        item = trim_ws(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value '" + value + "' for " + key);
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(parse_double(key, item));
    return out;
}

}  // namespace

void PipelineConfig::apply_line(const std::string& key, const std::string& value,
                                const std::string& origin) {
    if (key == "input") {
        for (const auto& p : split_list(value)) inputs.emplace_back(p);
    } else if (key == "mapping") {
        for (const auto& p : split_list(value)) mappings.emplace_back(p);
    } else if (key == "propulsion_table") {
        propulsion_table = value;
    } else if (key == "max_gap_s") {
        max_gap_s = parse_double(key, value);
    } else if (key == "min_overlap_s") {
        min_overlap_s = parse_double(key, value);
    } else if (key == "smooth_window") {
        smooth_window = static_cast<int>(parse_double(key, value));
    } else if (key == "trim_head_s") {
        trim_head_s = parse_double(key, value);
    } else if (key == "trim_tail_s") {
        trim_tail_s = parse_double(key, value);
    } else if (key == "low_speed_floor") {
        low_speed_floor = parse_double(key, value);
    } else if (key == "dtw_hz") {
        dtw_hz = parse_double(key, value);
    } else if (key == "dtw_band") {
        dtw_band = parse_double(key, value);
    } else if (key == "select_k") {
        select_k = static_cast<std::size_t>(parse_double(key, value));
    } else if (key == "similarity_signal") {
        if (value == "leader") similarity_on_follower = false;
        else if (value == "follower") similarity_on_follower = true;
        else throw ConfigError(origin + ": similarity_signal must be leader or follower");
    } else if (key == "jam_spacing") {
        jam_spacing = parse_double(key, value);
    } else if (key == "desired_speed") {
        desired_speed = parse_double(key, value);
    } else if (key == "v_star") {
        v_star = parse_double(key, value);
    } else if (key == "ttc_thresholds") {
        ttc_thresholds = parse_double_list(key, value);
    } else if (key == "drac_thresholds") {
        drac_thresholds = parse_double_list(key, value);
    } else if (key == "emission_coefficients") {
        emission_coefficients = value;
    } else if (key == "emission_form") {
        if (value == "loglinear") emission_form = EmissionForm::LogLinear;
        else if (value == "literal") emission_form = EmissionForm::LiteralPolynomial;
        else throw ConfigError(origin + ": emission_form must be loglinear or literal");
    } else if (key == "emission_platoons") {
        emission_platoons = split_list(value);
    } else if (key == "output_dir") {
        output_dir = value;
    } else if (key == "threads") {
        threads = static_cast<unsigned>(parse_double(key, value));
    } else {
        throw ConfigError(origin + ": unknown config key '" + key + "'");
    }
}

PipelineConfig PipelineConfig::parse(std::istream& in, const std::string& origin) {
    PipelineConfig cfg;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_ws(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ": expected key = value at line " +
                              std::to_string(lineno));
        cfg.apply_line(trim_ws(line.substr(0, eq)), trim_ws(line.substr(eq + 1)), origin);
    }
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse(in, path.string());
}

void PipelineConfig::validate() const {
    if (inputs.empty()) throw ConfigError("no input files configured");
    if (!mappings.empty() && mappings.size() != inputs.size())
        throw ConfigError("mapping count must match input count");
    if (max_gap_s <= 0.0) throw ConfigError("max_gap_s must be positive");
    if (min_overlap_s < 0.0) throw ConfigError("min_overlap_s must be non-negative");
    if (smooth_window < 1) throw ConfigError("smooth_window must be >= 1");
    if (trim_head_s < 0.0 || trim_tail_s < 0.0)
        throw ConfigError("trim amounts must be non-negative");
    if (dtw_hz <= 0.0) throw ConfigError("dtw_hz must be positive");
    if (dtw_band && *dtw_band <= 0.0) throw ConfigError("dtw_band must be positive");
    if (select_k == 0) throw ConfigError("select_k must be >= 1");
    if (jam_spacing < 0.0) throw ConfigError("jam_spacing must be non-negative");
    if (desired_speed && *desired_speed <= 0.0)
        throw ConfigError("desired_speed must be positive");
    if (v_star && *v_star <= 0.0) throw ConfigError("v_star must be positive");
    if (threads == 0) throw ConfigError("threads must be >= 1");

    auto check_sorted = [](const std::vector<double>& v, const std::string& name) {
        if (!v.empty() && !std::is_sorted(v.begin(), v.end()))
            throw ConfigError(name + " must be sorted ascending");
    };
    check_sorted(ttc_thresholds, "ttc_thresholds");
    check_sorted(drac_thresholds, "drac_thresholds");
}

}  // namespace acctraj
