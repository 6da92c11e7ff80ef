#include "acctraj/format.hpp"

#include <cmath>
#include <cstdio>

namespace acctraj {

std::string format_number(double x) {
    char buf[64];
    if (x != 0.0 && std::abs(x) < 1e-3) {
        std::snprintf(buf, sizeof(buf), "%.6e", x);
    } else {
        std::snprintf(buf, sizeof(buf), "%.6g", x);
    }
    return buf;
}

}  // namespace acctraj
