#pragma once

#include <optional>
#include <string>
#include <vector>

namespace acctraj {

enum class Propulsion { EV, ICEV, Hybrid, PluginHybrid, FuelCell, Other };
enum class DrivingMode { ACC, Human };

std::string to_string(Propulsion p);
std::string to_string(DrivingMode m);
std::optional<Propulsion> propulsion_from_string(const std::string& s);
std::optional<DrivingMode> driving_mode_from_string(const std::string& s);

struct VehicleMeta {
    std::string vehicle_id;
    Propulsion propulsion = Propulsion::Other;
    DrivingMode driving_mode = DrivingMode::Human;
    std::string model_name;
    std::optional<std::string> acc_gap_setting;
};

// One 10 Hz measurement row for a single vehicle. ivs is absent for the
// platoon leader.
struct RawSample {
    double t = 0.0;    // s
    double u = 0.0;    // raw speed, m/s
    std::optional<double> ivs;  // bumper-to-bumper spacing, m
};

using RawSeries = std::vector<RawSample>;

struct PlatoonVehicle {
    VehicleMeta meta;
    RawSeries samples;
};

struct Platoon {
    std::string platoon_id;
    std::vector<PlatoonVehicle> vehicles;  // position 0 = leader
};

// Fully derived per-vehicle record: raw speed u, smoothed speed v,
// acceleration a, and spacing s (followers only; empty for leaders).
struct VehicleTrajectory {
    VehicleMeta meta;
    std::vector<double> t;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> a;
    std::vector<double> s;

    std::size_t size() const { return t.size(); }
    double duration() const { return t.empty() ? 0.0 : t.back() - t.front(); }
};

struct LeaderFollowerPair {
    std::string pair_id;
    VehicleTrajectory leader;
    VehicleTrajectory follower;
};

struct FeatureStep {
    double v_f = 0.0;  // follower smoothed speed, m/s
    double v_l = 0.0;  // leader smoothed speed, m/s
    double a_f = 0.0;  // follower acceleration, m/s^2
    double a_l = 0.0;  // leader acceleration, m/s^2
    double s = 0.0;    // spacing, m
    double dv = 0.0;   // relative speed v_l - v_f, m/s
};

}  // namespace acctraj
