#pragma once

#include <string>

namespace acctraj {

// Delimited-output number format: '.' decimal point, scientific notation for
// 0 < |x| < 1e-3.
std::string format_number(double x);

}  // namespace acctraj
