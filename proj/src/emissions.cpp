#include "acctraj/emissions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "acctraj/errors.hpp"

namespace acctraj {

std::string to_string(EmissionType e) {
    switch (e) {
        case EmissionType::Fuel: return "Fuel";
        case EmissionType::HC: return "HC";
        case EmissionType::CO: return "CO";
        case EmissionType::NOx: return "NOx";
    }
    return "Fuel";
}

namespace {

std::optional<EmissionType> emission_from_string(const std::string& s) {
    if (s == "Fuel" || s == "fuel") return EmissionType::Fuel;
    if (s == "HC" || s == "hc") return EmissionType::HC;
    if (s == "CO" || s == "co") return EmissionType::CO;
    if (s == "NOx" || s == "NOX" || s == "nox") return EmissionType::NOx;
    return std::nullopt;
}

const std::array<EmissionType, 4> kAllEmissions = {
    EmissionType::Fuel, EmissionType::HC, EmissionType::CO, EmissionType::NOx};

}  // namespace

EmissionCoefficientTable EmissionCoefficientTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open coefficient file " + path.string());
    return parse(in, path.string());
}

EmissionCoefficientTable EmissionCoefficientTable::parse(std::istream& in,
                                                         const std::string& origin) {
    std::map<EmissionType, EmissionCoefficients> coeffs;
    std::map<EmissionType, std::array<std::set<std::pair<int, int>>, 2>> seen;

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), '\t', ',');
        std::istringstream row(line);
        std::string etype, regime, rs, qs, vs;
        if (!std::getline(row, etype, ',') || !std::getline(row, regime, ',') ||
            !std::getline(row, rs, ',') || !std::getline(row, qs, ',') ||
            !std::getline(row, vs, ','))
            throw ParseError(origin + ": expected emission_type,regime,r,q,value", lineno);
        if (etype == "emission_type") continue;  // header row

        auto e = emission_from_string(etype);
        if (!e) throw ParseError(origin + ": unknown emission type '" + etype + "'", lineno);
        int reg;
        if (regime == "positive" || regime == "pos") reg = 0;
        else if (regime == "negative" || regime == "neg") reg = 1;
        else throw ParseError(origin + ": unknown regime '" + regime + "'", lineno);

        int r, q;
        double value;
        try {
            r = std::stoi(rs);
            q = std::stoi(qs);
            value = std::stod(vs);
        } catch (const std::exception&) {
            throw ParseError(origin + ": non-numeric coefficient entry", lineno);
        }
        if (r < 0 || r > 3 || q < 0 || q > 3)
            throw ParseError(origin + ": powers r, q must be in 0..3", lineno);
        if (!std::isfinite(value))
            throw ParseError(origin + ": non-finite coefficient value", lineno);
        if (!seen[*e][reg].insert({r, q}).second)
            throw ParseError(origin + ": duplicate entry for " + etype, lineno);

        auto& grid = reg == 0 ? coeffs[*e].positive : coeffs[*e].negative;
        grid[r][q] = value;
    }

    for (EmissionType e : kAllEmissions) {
        for (int reg = 0; reg < 2; ++reg) {
            if (seen[e][reg].size() != 16)
                throw DataError(origin + ": incomplete " +
                                std::string(reg == 0 ? "positive" : "negative") +
                                "-regime grid for " + to_string(e));
        }
    }

    EmissionCoefficientTable table;
    table.coeffs_ = std::move(coeffs);
    return table;
}

const EmissionCoefficients& EmissionCoefficientTable::at(EmissionType e) const {
    auto it = coeffs_.find(e);
    if (it == coeffs_.end())
        throw DataError("coefficient table missing emission type " + to_string(e));
    return it->second;
}

void EmissionCoefficientTable::set(EmissionType e, const EmissionCoefficients& c) {
    coeffs_[e] = c;
}

double instantaneous_moe(double v_ms, double a_ms2, const EmissionCoefficientTable& table,
                         EmissionType e, EmissionForm form) {
    if (v_ms < 0.0) throw DataError("instantaneous_moe: negative speed");

    const double v = v_ms * 3.6;   // km/h
    const double a = a_ms2 * 3.6;  // km/h/s
    const auto& grid = a >= 0.0 ? table.at(e).positive : table.at(e).negative;

    double p = 0.0;
    double vr = 1.0;
    for (int r = 0; r <= 3; ++r) {
        double aq = 1.0;
        for (int q = 0; q <= 3; ++q) {
            p += grid[r][q] * vr * aq;
            aq *= a;
        }
        vr *= v;
    }
    if (form == EmissionForm::LogLinear) return std::exp(p);
    return std::max(p, 0.0);
}

PlatoonEmissionReport platoon_average_moe(const std::string& platoon_id,
                                          Propulsion lead_propulsion,
                                          const std::vector<VehicleTrajectory>& followers,
                                          const EmissionCoefficientTable& table,
                                          EmissionForm form) {
    std::vector<const VehicleTrajectory*> icev;
    for (const auto& f : followers)
        if (f.meta.propulsion == Propulsion::ICEV) icev.push_back(&f);
    if (icev.empty())
        throw DataError("platoon " + platoon_id + ": no ICEV followers to evaluate");

    PlatoonEmissionReport report;
    report.platoon_id = platoon_id;
    report.lead_propulsion = lead_propulsion;
    report.n_icev_followers = icev.size();

    for (EmissionType e : kAllEmissions) {
        // Per-follower mean first, then mean over followers; with equal T
        // this is the 1/(N*T) double sum.
        double sum_means = 0.0;
        for (const auto* traj : icev) {
            double sum = 0.0;
            for (std::size_t k = 0; k < traj->size(); ++k)
                sum += instantaneous_moe(std::max(traj->v[k], 0.0), traj->a[k], table, e,
                                         form);
            sum_means += sum / static_cast<double>(traj->size());
        }
        report.rates[e] = sum_means / static_cast<double>(icev.size());
    }
    report.n_steps = icev.front()->size();
    return report;
}

std::vector<PlatoonComparison> compare_platoons(
    const std::vector<PlatoonEmissionReport>& reports) {
    std::vector<const PlatoonEmissionReport*> icev_led, ev_led;
    for (const auto& r : reports) {
        if (r.lead_propulsion == Propulsion::ICEV) icev_led.push_back(&r);
        else if (r.lead_propulsion == Propulsion::EV) ev_led.push_back(&r);
    }
    if (icev_led.empty() || ev_led.empty())
        throw DataError("compare_platoons: need at least one EV-led and one ICEV-led platoon");

    std::vector<PlatoonComparison> out;
    for (const auto* a : icev_led) {
        for (const auto* b : ev_led) {
            PlatoonComparison cmp;
            cmp.icev_led_id = a->platoon_id;
            cmp.ev_led_id = b->platoon_id;
            for (const auto& [e, rate] : a->rates) {
                if (rate == 0.0) continue;
                cmp.change_percent[e] = 100.0 * (b->rates.at(e) - rate) / rate;
            }
            out.push_back(std::move(cmp));
        }
    }
    return out;
}

}  // namespace acctraj
