#include "acctraj/types.hpp"

#include <algorithm>
#include <cctype>

namespace acctraj {

namespace {
std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}
}  // namespace

std::string to_string(Propulsion p) {
    switch (p) {
        case Propulsion::EV: return "EV";
        case Propulsion::ICEV: return "ICEV";
        case Propulsion::Hybrid: return "Hybrid";
        case Propulsion::PluginHybrid: return "PluginHybrid";
        case Propulsion::FuelCell: return "FuelCell";
        case Propulsion::Other: return "Other";
    }
    return "Other";
}

std::string to_string(DrivingMode m) {
    return m == DrivingMode::ACC ? "ACC" : "Human";
}

std::optional<Propulsion> propulsion_from_string(const std::string& s) {
    const std::string k = lower(s);
    if (k == "ev" || k == "bev" || k == "electric") return Propulsion::EV;
    if (k == "icev" || k == "ice" || k == "gasoline" || k == "diesel" || k == "petrol")
        return Propulsion::ICEV;
    if (k == "hybrid" || k == "hev") return Propulsion::Hybrid;
    if (k == "pluginhybrid" || k == "plugin_hybrid" || k == "phev")
        return Propulsion::PluginHybrid;
    if (k == "fuelcell" || k == "fuel_cell" || k == "fcev") return Propulsion::FuelCell;
    if (k == "other") return Propulsion::Other;
    return std::nullopt;
}

std::optional<DrivingMode> driving_mode_from_string(const std::string& s) {
    const std::string k = lower(s);
    if (k == "acc") return DrivingMode::ACC;
    if (k == "human" || k == "manual" || k == "humandriven") return DrivingMode::Human;
    return std::nullopt;
}

}  // namespace acctraj
