#include "acctraj/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "acctraj/errors.hpp"
#include "acctraj/kinematics.hpp"

namespace acctraj {

namespace {

std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(trim_ws(field));
    if (!line.empty() && line.back() == delim) out.push_back("");
    return out;
}

}  // namespace

SchemaMapping SchemaMapping::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mapping file " + path.string());
    return parse(in, path.string());
}

SchemaMapping SchemaMapping::parse(std::istream& in, const std::string& origin) {
    SchemaMapping m;
    std::map<int, VehicleMapping> by_pos;
    int count = 0;

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
        const std::string key = trim_ws(line.substr(0, eq));
        const std::string value = trim_ws(line.substr(eq + 1));

        if (key == "platoon_id") {
            m.platoon_id = value;
        } else if (key == "time") {
            m.time_col = value;
        } else if (key == "delimiter") {
            if (value == "comma") m.delimiter = ',';
            else if (value == "tab") m.delimiter = '\t';
            else throw ConfigError(origin + ": delimiter must be comma or tab");
        } else if (key == "vehicle.count") {
            count = std::stoi(value);
        } else if (key.rfind("vehicle.", 0) == 0) {
            auto rest = key.substr(8);
            auto dot = rest.find('.');
            if (dot == std::string::npos)
                throw ConfigError(origin + ": bad vehicle key '" + key + "'");
            int pos;
            try {
                pos = std::stoi(rest.substr(0, dot));
            } catch (const std::exception&) {
                throw ConfigError(origin + ": bad vehicle position in '" + key + "'");
            }
            const std::string attr = rest.substr(dot + 1);
            VehicleMapping& vm = by_pos[pos];
            if (attr == "id") vm.id = value;
            else if (attr == "speed_col") vm.speed_col = value;
            else if (attr == "ivs_col") vm.ivs_col = value;
            else if (attr == "model") vm.model = value;
            else if (attr == "mode") vm.mode = value;
            else if (attr == "acc_gap") vm.acc_gap_setting = value;
            else throw ConfigError(origin + ": unknown vehicle attribute '" + attr + "'");
        } else {
            throw ConfigError(origin + ": unknown key '" + key + "'");
        }
    }

    if (count == 0 && !by_pos.empty()) count = by_pos.rbegin()->first;
    if (count < 1) throw ConfigError(origin + ": vehicle.count missing or zero");

    for (int pos = 1; pos <= count; ++pos) {
        VehicleMapping vm = by_pos.count(pos) ? by_pos[pos] : VehicleMapping{};
        // Public-dataset defaults: Speed<pos>/IVS<pos> columns.
        if (vm.id.empty()) vm.id = "vehicle" + std::to_string(pos);
        if (vm.speed_col.empty()) vm.speed_col = "Speed" + std::to_string(pos);
        if (vm.ivs_col.empty() && pos > 1) vm.ivs_col = "IVS" + std::to_string(pos);
        if (vm.mode.empty()) vm.mode = pos == 1 ? "ACC" : "Human";
        m.vehicles.push_back(std::move(vm));
    }
    if (m.platoon_id.empty()) m.platoon_id = origin;
    return m;
}

PropulsionTable PropulsionTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open propulsion table " + path.string());

    PropulsionTable table;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim_ws(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, ',');
        if (fields.size() != 2)
            throw ParseError(path.string() + ": expected model,propulsion", lineno);
        if (fields[0] == "model") continue;  // header
        auto p = propulsion_from_string(fields[1]);
        if (!p)
            throw ParseError(path.string() + ": unknown propulsion '" + fields[1] + "'",
                             lineno);
        table.set(fields[0], *p);
    }
    return table;
}

void PropulsionTable::set(const std::string& model, Propulsion p) {
    by_model_[model] = p;
}

Propulsion PropulsionTable::classify(const std::string& model) const {
    auto it = by_model_.find(model);
    if (it != by_model_.end()) return it->second;
    // A model string that is itself a propulsion name classifies directly.
    if (auto p = propulsion_from_string(model)) return *p;
    return Propulsion::Other;
}

SchemaMapping infer_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trajectory file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file", 1);

    char delim = ',';
    if (line.find('\t') != std::string::npos && line.find(',') == std::string::npos)
        delim = '\t';
    const auto header = split(line, delim);

    int count = 0;
    for (const auto& col : header) {
        if (col.rfind("Speed", 0) == 0) {
            try {
                count = std::max(count, std::stoi(col.substr(5)));
            } catch (const std::exception&) {
            }
        }
    }
    if (count < 1)
        throw ParseError(path.string() + ": no Speed<i> columns to infer a schema from", 1);

    SchemaMapping m;
    m.delimiter = delim;
    m.platoon_id = path.stem().string();
    for (int pos = 1; pos <= count; ++pos) {
        VehicleMapping vm;
        vm.id = path.stem().string() + "_v" + std::to_string(pos);
        vm.speed_col = "Speed" + std::to_string(pos);
        if (pos > 1) vm.ivs_col = "IVS" + std::to_string(pos);
        vm.mode = pos == 1 ? "ACC" : "Human";
        m.vehicles.push_back(std::move(vm));
    }
    return m;
}

ParseResult parse_trajectory_file(const std::filesystem::path& path,
                                  const SchemaMapping& schema,
                                  const PropulsionTable& propulsion) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trajectory file " + path.string());
    return parse_trajectory_stream(in, path.string(), schema, propulsion);
}

ParseResult parse_trajectory_stream(std::istream& in, const std::string& origin,
                                    const SchemaMapping& schema,
                                    const PropulsionTable& propulsion) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(origin + ": empty file", 1);

    char delim = schema.delimiter;
    if (line.find('\t') != std::string::npos && line.find(',') == std::string::npos)
        delim = '\t';
    const auto header = split(line, delim);

    auto column = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError(origin + ": missing column '" + name + "'", 1);
        return static_cast<std::size_t>(it - header.begin());
    };

    const std::size_t time_idx = column(schema.time_col);
    struct Cols {
        std::size_t speed;
        std::optional<std::size_t> ivs;
    };
    std::vector<Cols> cols;
    for (std::size_t i = 0; i < schema.vehicles.size(); ++i) {
        const auto& vm = schema.vehicles[i];
        Cols c{column(vm.speed_col), std::nullopt};
        if (i > 0 && !vm.ivs_col.empty()) c.ivs = column(vm.ivs_col);
        cols.push_back(c);
    }

    ParseResult result;
    result.platoon.platoon_id = schema.platoon_id;
    for (const auto& vm : schema.vehicles) {
        PlatoonVehicle pv;
        pv.meta.vehicle_id = vm.id;
        pv.meta.model_name = vm.model;
        pv.meta.propulsion = propulsion.classify(vm.model);
        if (pv.meta.propulsion == Propulsion::Other && !vm.model.empty())
            result.warnings.push_back(
                {"unknown propulsion for model '" + vm.model + "', classified as Other"});
        auto mode = driving_mode_from_string(vm.mode);
        if (!mode)
            throw ConfigError(origin + ": unknown driving mode '" + vm.mode +
                              "' for vehicle " + vm.id);
        pv.meta.driving_mode = *mode;
        if (!vm.acc_gap_setting.empty()) pv.meta.acc_gap_setting = vm.acc_gap_setting;
        result.platoon.vehicles.push_back(std::move(pv));
    }

    long lineno = 1;
    double prev_t = -std::numeric_limits<double>::infinity();
    std::vector<double> intervals;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim_ws(line).empty()) continue;
        const auto fields = split(line, delim);
        if (fields.size() < header.size())
            throw ParseError(origin + ": row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(header.size()),
                             lineno);
        auto num = [&](std::size_t idx) {
            try {
                std::size_t used = 0;
                double v = std::stod(fields[idx], &used);
                if (used != fields[idx].size()) throw std::invalid_argument("trailing");
                return v;
            } catch (const std::exception&) {
                throw ParseError(origin + ": non-numeric value '" + fields[idx] +
                                     "' in column '" + header[idx] + "'",
                                 lineno);
            }
        };

        const double t = num(time_idx);
        if (t <= prev_t)
            throw DataError(origin + ": non-monotone timestamps at line " +
                            std::to_string(lineno));
        if (std::isfinite(prev_t)) intervals.push_back(t - prev_t);
        prev_t = t;

        for (std::size_t i = 0; i < cols.size(); ++i) {
            RawSample smp;
            smp.t = t;
            smp.u = num(cols[i].speed);
            if (smp.u < 0.0)
                throw DataError(origin + ": negative speed at line " +
                                std::to_string(lineno));
            if (cols[i].ivs) {
                const double ivs = num(*cols[i].ivs);
                if (ivs <= 0.0)
                    throw DataError(origin + ": non-positive spacing at line " +
                                    std::to_string(lineno));
                smp.ivs = ivs;
            }
            result.platoon.vehicles[i].samples.push_back(smp);
        }
    }

    if (!intervals.empty()) {
        std::vector<double> sorted = intervals;
        std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
        const double med = sorted[sorted.size() / 2];
        if (std::abs(med - 0.1) > 0.01)
            result.warnings.push_back(
                {origin + ": median sampling interval " + std::to_string(med) +
                 " s differs from the nominal 10 Hz rate"});
    }
    return result;
}

std::vector<RawSeries> repair_gaps(const RawSeries& series, double max_gap_s) {
    if (series.empty()) throw DataError("repair_gaps: empty series");

    constexpr double kStep = 0.1;
    std::vector<RawSeries> segments;
    RawSeries current;
    current.push_back(series.front());

    for (std::size_t i = 1; i < series.size(); ++i) {
        const RawSample& prev = series[i - 1];
        const RawSample& next = series[i];
        const double gap = next.t - prev.t;
        if (gap > max_gap_s + 1e-9) {
            segments.push_back(std::move(current));
            current.clear();
        } else if (gap > kStep + 1e-9) {
            // Fill the 0.1 s grid between the two samples.
            const auto missing = static_cast<std::size_t>(std::round(gap / kStep)) - 1;
            for (std::size_t j = 1; j <= missing; ++j) {
                const double t = prev.t + kStep * static_cast<double>(j);
                const double w = (t - prev.t) / gap;
                RawSample smp;
                smp.t = t;
                smp.u = prev.u + w * (next.u - prev.u);
                if (prev.ivs && next.ivs) smp.ivs = *prev.ivs + w * (*next.ivs - *prev.ivs);
                current.push_back(smp);
            }
        }
        current.push_back(next);
    }
    segments.push_back(std::move(current));
    return segments;
}

std::vector<LeaderFollowerPair> decompose_platoon(const Platoon& p, int smooth_window) {
    if (p.vehicles.empty()) throw DataError("decompose_platoon: empty platoon");
    if (p.vehicles.size() == 1) return {};

    std::vector<VehicleTrajectory> trajs;
    trajs.reserve(p.vehicles.size());
    for (const auto& veh : p.vehicles)
        trajs.push_back(build_trajectory(veh.meta, veh.samples, smooth_window));

    std::vector<LeaderFollowerPair> pairs;
    for (std::size_t i = 1; i < trajs.size(); ++i) {
        const VehicleTrajectory& ldr = trajs[i - 1];
        const VehicleTrajectory& flw = trajs[i];

        const double t_lo = std::max(ldr.t.front(), flw.t.front());
        const double t_hi = std::min(ldr.t.back(), flw.t.back());
        if (t_hi <= t_lo) continue;  // no overlap

        auto clip = [&](const VehicleTrajectory& traj) {
            std::size_t lo = 0, hi = traj.size();
            while (lo < traj.size() && traj.t[lo] < t_lo - 1e-9) ++lo;
            while (hi > lo && traj.t[hi - 1] > t_hi + 1e-9) --hi;
            VehicleTrajectory out;
            out.meta = traj.meta;
            auto cut = [&](const std::vector<double>& src, std::vector<double>& dst) {
                if (!src.empty()) dst.assign(src.begin() + lo, src.begin() + hi);
            };
            cut(traj.t, out.t);
            cut(traj.u, out.u);
            cut(traj.v, out.v);
            cut(traj.a, out.a);
            cut(traj.s, out.s);
            return out;
        };

        LeaderFollowerPair pair;
        pair.leader = clip(ldr);
        pair.follower = clip(flw);
        if (pair.leader.size() != pair.follower.size() || pair.follower.size() < 2)
            continue;
        pair.pair_id = p.platoon_id + ":" + ldr.meta.vehicle_id + ">" +
                       flw.meta.vehicle_id;
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

std::vector<LeaderFollowerPair> filter_pairs(const std::vector<LeaderFollowerPair>& pairs,
                                             const FilterOptions& opts) {
    std::vector<LeaderFollowerPair> out;
    for (const auto& pair : pairs) {
        const auto& meta = pair.follower.meta;
        if (meta.driving_mode != DrivingMode::ACC) continue;
        if (meta.propulsion != Propulsion::EV && meta.propulsion != Propulsion::ICEV)
            continue;
        if (pair.follower.duration() < opts.min_overlap_s) continue;
        out.push_back(pair);
    }
    return out;
}

}  // namespace acctraj
