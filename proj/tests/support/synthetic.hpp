#pragma once

// Deterministic synthetic trajectory corpus used by the pipeline tests and
// the acceptance suite.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

struct SyntheticVehicle {
    std::string model;  // "EV" or "ICEV" classifies directly
    double track_lag_s = 1.0;
    double gap_gain = 0.6;  // s per m/s of follower speed
};

struct SyntheticPlatoon {
    std::string name;
    std::vector<SyntheticVehicle> vehicles;  // first = leader
    unsigned seed = 1;
    double duration_s = 400.0;
};

// Leader profile: stop, ramp up, cruise with mild oscillation, slow down.
inline double leader_speed(double t, double duration, std::mt19937& /*rng*/) {
    const double cruise = 20.0;
    if (t < 20.0) return 0.05 * t;                       // creep from standstill
    if (t < 60.0) return 1.0 + (cruise - 1.0) * (t - 20.0) / 40.0;
    if (t > duration - 30.0) {
        const double w = (duration - t) / 30.0;
        return cruise * std::max(w, 0.0);
    }
    return cruise + 1.5 * std::sin(0.08 * t) + 0.8 * std::sin(0.023 * t + 1.0);
}

// Writes "<name>.csv" in the ingest column layout plus a matching
// "<name>.conf" mapping.
inline void write_platoon(const std::filesystem::path& dir, const SyntheticPlatoon& p) {
    std::mt19937 rng(p.seed);
    std::normal_distribution<double> noise(0.0, 0.05);

    const auto n_vehicles = p.vehicles.size();
    const auto steps = static_cast<std::size_t>(p.duration_s * 10.0);

    std::vector<std::vector<double>> speed(n_vehicles), ivs(n_vehicles);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = 0.1 * static_cast<double>(k);
        speed[0].push_back(std::max(leader_speed(t, p.duration_s, rng) + noise(rng), 0.0));
    }
    for (std::size_t i = 1; i < n_vehicles; ++i) {
        const auto& veh = p.vehicles[i];
        const auto lag = static_cast<std::size_t>(veh.track_lag_s * 10.0);
        for (std::size_t k = 0; k < steps; ++k) {
            const double lead_v = speed[i - 1][k >= lag ? k - lag : 0];
            speed[i].push_back(std::max(lead_v + noise(rng), 0.0));
            // Spacing follows a constant-time-gap policy around a 3.5 m
            // standstill gap.
            ivs[i].push_back(3.5 + veh.gap_gain * speed[i].back() +
                             0.3 * std::abs(noise(rng)) + 0.05);
        }
    }

    std::ofstream csv(dir / (p.name + ".csv"));
    csv << "Time";
    for (std::size_t i = 1; i <= n_vehicles; ++i) {
        csv << ",Speed" << i;
        if (i > 1) csv << ",IVS" << i;
    }
    csv << '\n';
    char buf[64];
    auto fmt = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.4f", x);
        return std::string(buf);
    };
    for (std::size_t k = 0; k < steps; ++k) {
        csv << fmt(0.1 * static_cast<double>(k));
        for (std::size_t i = 0; i < n_vehicles; ++i) {
            csv << ',' << fmt(speed[i][k]);
            if (i > 0) csv << ',' << fmt(ivs[i][k]);
        }
        csv << '\n';
    }

    std::ofstream conf(dir / (p.name + ".conf"));
    conf << "platoon_id = " << p.name << "\n";
    conf << "vehicle.count = " << n_vehicles << "\n";
    for (std::size_t i = 0; i < n_vehicles; ++i) {
        conf << "vehicle." << i + 1 << ".id = " << p.name << "_v" << i + 1 << "\n";
        conf << "vehicle." << i + 1 << ".model = " << p.vehicles[i].model << "\n";
        conf << "vehicle." << i + 1 << ".mode = ACC\n";
    }
}

// Three-platoon corpus: one ICEV-led, two EV-led, mixed followers.
inline std::vector<SyntheticPlatoon> default_corpus() {
    return {
        {"platoonA", {{"ICEV"}, {"ICEV", 1.0, 0.75}, {"EV", 0.8, 0.35}}, 11},
        {"platoonB", {{"EV"}, {"ICEV", 1.1, 0.7}, {"EV", 0.7, 0.3}}, 22},
        {"platoonC", {{"EV"}, {"EV", 0.9, 0.4}, {"ICEV", 1.2, 0.8}, {"EV", 0.6, 0.35}}, 33},
    };
}

inline void write_corpus(const std::filesystem::path& dir,
                         const std::vector<SyntheticPlatoon>& platoons) {
    std::filesystem::create_directories(dir);
    for (const auto& p : platoons) write_platoon(dir, p);
}

// Synthetic coefficient table file covering all four emission types.
inline void write_coefficients(const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "emission_type,regime,r,q,value\n";
    const std::pair<const char*, double> bases[] = {
        {"Fuel", -8.0}, {"HC", -5.8}, {"CO", -3.0}, {"NOx", -6.2}};
    for (const auto& [name, c00] : bases) {
        for (const char* regime : {"positive", "negative"}) {
            for (int r = 0; r <= 3; ++r) {
                for (int q = 0; q <= 3; ++q) {
                    double v = 0.0;
                    if (r == 0 && q == 0) v = c00;
                    else if (r == 1 && q == 0) v = 0.02;
                    else if (r == 0 && q == 1)
                        v = std::string(regime) == "positive" ? 0.05 : 0.02;
                    else if (r == 2 && q == 0) v = -5e-5;
                    out << name << ',' << regime << ',' << r << ',' << q << ',' << v
                        << '\n';
                }
            }
        }
    }
}

}  // namespace testsupport
