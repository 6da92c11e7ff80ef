#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "acctraj/types.hpp"

namespace acctraj {

enum class EmissionType { Fuel, HC, CO, NOx };
enum class EmissionForm { LogLinear, LiteralPolynomial };

std::string to_string(EmissionType e);

// 4x4 coefficient grid C[r][q] over speed power r and acceleration power q.
using CoefficientGrid = std::array<std::array<double, 4>, 4>;

struct EmissionCoefficients {
    CoefficientGrid positive;  // a >= 0
    CoefficientGrid negative;  // a < 0
};

class EmissionCoefficientTable {
public:
    // Delimited text, one row per (emission_type, regime, r, q, value).
    static EmissionCoefficientTable load(const std::filesystem::path& path);
    static EmissionCoefficientTable parse(std::istream& in, const std::string& origin);

    const EmissionCoefficients& at(EmissionType e) const;
    void set(EmissionType e, const EmissionCoefficients& c);

private:
    std::map<EmissionType, EmissionCoefficients> coeffs_;
};

// Evaluates the speed/acceleration polynomial at v*3.6 km/h and a*3.6
// km/h/s; the a >= 0 grid handles the boundary. LogLinear exponentiates the
// polynomial; LiteralPolynomial clamps it at zero.
double instantaneous_moe(double v_ms, double a_ms2, const EmissionCoefficientTable& table,
                         EmissionType e, EmissionForm form = EmissionForm::LogLinear);

struct PlatoonEmissionReport {
    std::string platoon_id;
    Propulsion lead_propulsion = Propulsion::Other;
    std::map<EmissionType, double> rates;  // liters/s/veh (fuel), g/s/veh otherwise
    std::size_t n_icev_followers = 0;
    std::size_t n_steps = 0;
};

// Mean instantaneous rate over all ICEV followers and time steps.
PlatoonEmissionReport platoon_average_moe(const std::string& platoon_id,
                                          Propulsion lead_propulsion,
                                          const std::vector<VehicleTrajectory>& followers,
                                          const EmissionCoefficientTable& table,
                                          EmissionForm form = EmissionForm::LogLinear);

struct PlatoonComparison {
    std::string icev_led_id;
    std::string ev_led_id;
    std::map<EmissionType, double> change_percent;  // 100*(EV-led - ICEV-led)/ICEV-led
};

// Every (ICEV-led, EV-led) ordered pair.
std::vector<PlatoonComparison> compare_platoons(
    const std::vector<PlatoonEmissionReport>& reports);

}  // namespace acctraj
