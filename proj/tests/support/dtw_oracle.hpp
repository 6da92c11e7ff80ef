#pragma once

// Brute-force DTW reference: minimum cost over every monotone warping path,
// independent of the dynamic-programming implementation.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace testsupport {

inline double dtw_enumerate_paths(const std::vector<double>& x,
                                  const std::vector<double>& y) {
    const std::size_t m = x.size(), n = y.size();
    double best = std::numeric_limits<double>::infinity();

    // Depth-first walk over steps {down, right, diagonal} from (0,0) to
    // (m-1, n-1), accumulating |x_h - y_k| at every visited cell.
    struct Frame {
        std::size_t h, k;
        double cost;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, std::abs(x[0] - y[0])});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.h == m - 1 && f.k == n - 1) {
            best = std::min(best, f.cost);
            continue;
        }
        if (f.h + 1 < m)
            stack.push_back({f.h + 1, f.k, f.cost + std::abs(x[f.h + 1] - y[f.k])});
        if (f.k + 1 < n)
            stack.push_back({f.h, f.k + 1, f.cost + std::abs(x[f.h] - y[f.k + 1])});
        if (f.h + 1 < m && f.k + 1 < n)
            stack.push_back(
                {f.h + 1, f.k + 1, f.cost + std::abs(x[f.h + 1] - y[f.k + 1])});
    }
    return best;
}

}  // namespace testsupport
