#include "acctraj/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "acctraj/errors.hpp"

namespace acctraj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Column range of row h inside the band |h - k*m/n| <= band, clamped to
// [0, n). Indices are 0-based.
std::pair<std::size_t, std::size_t> band_columns(std::size_t h, std::size_t m,
                                                 std::size_t n, double band) {
    const double ratio = static_cast<double>(m) / static_cast<double>(n);
    double lo = (static_cast<double>(h) - band) / ratio;
    double hi = (static_cast<double>(h) + band) / ratio;
    auto k_lo = static_cast<long>(std::ceil(lo));
    auto k_hi = static_cast<long>(std::floor(hi));
    k_lo = std::max<long>(k_lo, 0);
    k_hi = std::min<long>(k_hi, static_cast<long>(n) - 1);
    if (k_hi < k_lo) return {1, 0};  // empty
    return {static_cast<std::size_t>(k_lo), static_cast<std::size_t>(k_hi)};
}

// Rolling two-row DP; distance only.
double dtw_cost(const std::vector<double>& x, const std::vector<double>& y,
                std::optional<double> band) {
    const std::size_t m = x.size(), n = y.size();
    std::vector<double> prev(n, kInf), cur(n, kInf);
    for (std::size_t h = 0; h < m; ++h) {
        std::size_t k_lo = 0, k_hi = n - 1;
        if (band) {
            auto [lo, hi] = band_columns(h, m, n, *band);
            if (lo > hi) throw DataError("dtw: band too narrow, no feasible path");
            k_lo = lo;
            k_hi = hi;
        }
        std::fill(cur.begin(), cur.end(), kInf);
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            const double local = std::abs(x[h] - y[k]);
            double best;
            if (h == 0 && k == 0) {
                best = 0.0;
            } else {
                best = prev[k];  // insertion
                if (k > 0) {
                    best = std::min(best, cur[k - 1]);   // deletion
                    best = std::min(best, prev[k - 1]);  // match
                }
            }
            cur[k] = local + best;
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

// Full-matrix DP with backtracking for the path-length diagnostic.
DtwResult dtw_full(const std::vector<double>& x, const std::vector<double>& y,
                   std::optional<double> band) {
    const std::size_t m = x.size(), n = y.size();
    std::vector<double> d(m * n, kInf);
    auto at = [&](std::size_t h, std::size_t k) -> double& { return d[h * n + k]; };

    for (std::size_t h = 0; h < m; ++h) {
        std::size_t k_lo = 0, k_hi = n - 1;
        if (band) {
            auto [lo, hi] = band_columns(h, m, n, *band);
            if (lo > hi) throw DataError("dtw: band too narrow, no feasible path");
            k_lo = lo;
            k_hi = hi;
        }
        for (std::size_t k = k_lo; k <= k_hi; ++k) {
            const double local = std::abs(x[h] - y[k]);
            double best;
            if (h == 0 && k == 0) {
                best = 0.0;
            } else {
                best = h > 0 ? at(h - 1, k) : kInf;
                if (k > 0) {
                    best = std::min(best, at(h, k - 1));
                    if (h > 0) best = std::min(best, at(h - 1, k - 1));
                }
            }
            at(h, k) = local + best;
        }
    }

    std::size_t steps = 1;
    std::size_t h = m - 1, k = n - 1;
    while (h > 0 || k > 0) {
        double diag = (h > 0 && k > 0) ? at(h - 1, k - 1) : kInf;
        double up = h > 0 ? at(h - 1, k) : kInf;
        double left = k > 0 ? at(h, k - 1) : kInf;
        if (diag <= up && diag <= left) {
            --h; --k;
        } else if (up <= left) {
            --h;
        } else {
            --k;
        }
        ++steps;
    }

    DtwResult res;
    res.distance = at(m - 1, n - 1);
    res.normalized = res.distance / static_cast<double>(std::max(m, n));
    res.path_length = steps;
    return res;
}

constexpr std::size_t kFullMatrixCellLimit = 1u << 22;

}  // namespace

DtwResult dtw_distance(const std::vector<double>& x, const std::vector<double>& y,
                       std::optional<double> band) {
    if (x.empty() || y.empty()) throw DataError("dtw: empty input series");
    if (x.size() * y.size() <= kFullMatrixCellLimit) return dtw_full(x, y, band);

    DtwResult res;
    res.distance = dtw_cost(x, y, band);
    res.normalized = res.distance / static_cast<double>(std::max(x.size(), y.size()));
    return res;
}

double dtw_normalized(const std::vector<double>& x, const std::vector<double>& y,
                      std::optional<double> band) {
    if (x.empty() || y.empty()) throw DataError("dtw: empty input series");
    return dtw_cost(x, y, band) / static_cast<double>(std::max(x.size(), y.size()));
}

std::vector<double> downsample(const std::vector<double>& series, double native_hz,
                               double target_hz) {
    if (target_hz <= 0.0) throw DataError("downsample: target rate must be positive");
    if (target_hz > native_hz)
        throw DataError("downsample: target rate exceeds native rate");
    const auto stride = static_cast<std::size_t>(std::floor(native_hz / target_hz));
    std::vector<double> out;
    out.reserve(series.size() / std::max<std::size_t>(stride, 1) + 1);
    for (std::size_t i = 0; i < series.size(); i += stride) out.push_back(series[i]);
    return out;
}

std::size_t SimilarityMatrix::index_of(const std::string& id) const {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) throw DataError("similarity matrix: unknown id " + id);
    return static_cast<std::size_t>(it - ids.begin());
}

namespace {

double median_of(std::vector<double> vals) {
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n % 2 == 1) return vals[n / 2];
    return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

}  // namespace

SimilarityMatrix pairwise_matrix(
    const std::vector<std::pair<std::string, std::vector<double>>>& trajectories,
    std::optional<double> band, unsigned threads) {
    const std::size_t n = trajectories.size();
    if (n < 2) throw DataError("pairwise_matrix: need at least 2 trajectories");

    SimilarityMatrix m;
    m.ids.reserve(n);
    for (const auto& [id, series] : trajectories) {
        if (series.empty()) throw DataError("pairwise_matrix: empty series for " + id);
        m.ids.push_back(id);
    }
    m.dist.assign(n, std::vector<double>(n, 0.0));

    // Flatten the upper triangle; each cell is independent, so any thread
    // partition yields bitwise identical results.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    cells.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) cells.emplace_back(i, j);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            auto [i, j] = cells[c];
            const double v =
                dtw_normalized(trajectories[i].second, trajectories[j].second, band);
            m.dist[i][j] = v;
            m.dist[j][i] = v;
        }
    };

    if (threads <= 1) {
        work(0, cells.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cells.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = std::min<std::size_t>(t * chunk, cells.size());
            const std::size_t e = std::min<std::size_t>(b + chunk, cells.size());
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    m.medians.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row;
        row.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) row.push_back(m.dist[i][j]);
        m.medians[i] = median_of(std::move(row));
    }
    return m;
}

SelectionResult select_most_similar(
    const SimilarityMatrix& matrix,
    const std::function<FollowerClass(const std::string&)>& class_of, std::size_t k) {
    struct Entry {
        double median;
        std::string id;
    };
    std::vector<Entry> ev, icev;
    for (std::size_t i = 0; i < matrix.ids.size(); ++i) {
        Entry e{matrix.medians[i], matrix.ids[i]};
        (class_of(matrix.ids[i]) == FollowerClass::EV ? ev : icev).push_back(e);
    }
    auto pick = [&](std::vector<Entry>& entries) {
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            if (a.median != b.median) return a.median < b.median;
            return a.id < b.id;
        });
        std::vector<std::string> out;
        for (std::size_t i = 0; i < std::min(k, entries.size()); ++i)
            out.push_back(entries[i].id);
        return out;
    };

    SelectionResult res;
    res.k = k;
    res.ev_ids = pick(ev);
    res.icev_ids = pick(icev);
    return res;
}

}  // namespace acctraj
