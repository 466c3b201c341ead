#include "anomatch/matrix_profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace anomatch {

namespace {

// Runs fn(begin, end) over a partition of [0, n). Each index is handled by
// exactly one worker, so results are identical for any worker count.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1 || n < 128) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        if (begin == end) break;
        pool.emplace_back(fn, begin, end);
    }
    for (auto& t : pool) t.join();
}

void check_window_length(const MetricSeries& series, std::size_t m) {
    if (m == 0) throw std::invalid_argument("window length must be positive");
    if (m > series.length()) throw std::invalid_argument("window exceeds series");
}

}  // namespace

std::size_t self_join_exclusion(std::size_t window_length) {
    return (window_length + 1) / 2;
}

std::vector<double> normalized_window_matrix(const MetricSeries& series, std::size_t window_length) {
    check_window_length(series, window_length);
    const auto& vals = series.values();
    const std::size_t n = vals.size() - window_length + 1;
    std::vector<double> flat(n * window_length);
    for (std::size_t i = 0; i < n; ++i) {
        auto norm = minmax_normalize(std::span<const double>(vals.data() + i, window_length));
        std::copy(norm.begin(), norm.end(), flat.begin() + i * window_length);
    }
    return flat;
}

namespace {

// Nearest-neighbor scan for one query row over [0, n_ref) with an optional
// diagonal exclusion band. Early abandons on the running minimum; ties keep
// the lowest reference index. Returns the squared distance.
std::pair<std::size_t, double> scan_row(const double* query_row, const double* ref_flat,
                                        std::size_t n_ref, std::size_t m, std::size_t query_index,
                                        std::size_t exclusion) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = n_ref;  // sentinel
    for (std::size_t j = 0; j < n_ref; ++j) {
        if (exclusion > 0) {
            const std::size_t gap = query_index > j ? query_index - j : j - query_index;
            if (gap < exclusion) continue;
        }
        const double* ref_row = ref_flat + j * m;
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double d = query_row[k] - ref_row[k];
            sum += d * d;
            if (sum > best) break;
        }
        if (sum < best) {
            best = sum;
            best_j = j;
        }
    }
    return {best_j, best};
}

ProfilePair join_impl(const std::vector<double>& ref_flat, std::size_t n_ref,
                      const std::vector<double>& query_flat, std::size_t n_query, std::size_t m,
                      std::size_t exclusion, unsigned workers) {
    ProfilePair out;
    out.indices.assign(n_query, 0);
    out.distances.assign(n_query, 0.0);
    parallel_for(n_query, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto [j, sq] = scan_row(query_flat.data() + i * m, ref_flat.data(), n_ref, m, i, exclusion);
            out.indices[i] = j;
            out.distances[i] = std::sqrt(sq);
        }
    });
    return out;
}

}  // namespace

ProfilePair self_join(const MetricSeries& series, std::size_t window_length, unsigned workers) {
    check_window_length(series, window_length);
    if (series.length() < 2 * window_length) {
        throw std::invalid_argument("series too short for self-join");
    }
    const auto flat = normalized_window_matrix(series, window_length);
    const std::size_t n = series.length() - window_length + 1;
    return join_impl(flat, n, flat, n, window_length, self_join_exclusion(window_length), workers);
}

ProfilePair cross_join(const MetricSeries& reference, const MetricSeries& query,
                       std::size_t window_length, unsigned workers) {
    check_window_length(reference, window_length);
    check_window_length(query, window_length);
    const auto ref_flat = normalized_window_matrix(reference, window_length);
    const auto query_flat = normalized_window_matrix(query, window_length);
    const std::size_t n_ref = reference.length() - window_length + 1;
    const std::size_t n_query = query.length() - window_length + 1;
    return join_impl(ref_flat, n_ref, query_flat, n_query, window_length, 0, workers);
}

ProfilePair brute_force_spw(const MetricSeries& reference, const MetricSeries& query,
                            std::size_t window_length, std::optional<std::size_t> exclusion) {
    check_window_length(reference, window_length);
    check_window_length(query, window_length);
    if (exclusion && reference.length() < 2 * window_length) {
        throw std::invalid_argument("series too short for self-join");
    }
    const std::size_t m = window_length;
    const std::size_t n_ref = reference.length() - m + 1;
    const std::size_t n_query = query.length() - m + 1;

    std::vector<std::vector<double>> ref_windows(n_ref);
    for (std::size_t j = 0; j < n_ref; ++j) {
        ref_windows[j] =
            minmax_normalize(std::span<const double>(reference.values().data() + j, m));
    }
    std::vector<std::vector<double>> query_windows(n_query);
    for (std::size_t i = 0; i < n_query; ++i) {
        query_windows[i] = minmax_normalize(std::span<const double>(query.values().data() + i, m));
    }

    ProfilePair out;
    out.indices.assign(n_query, 0);
    out.distances.assign(n_query, 0.0);
    const std::size_t excl = exclusion.value_or(0);
    for (std::size_t i = 0; i < n_query; ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = n_ref;
        for (std::size_t j = 0; j < n_ref; ++j) {
            if (excl > 0) {
                const std::size_t gap = i > j ? i - j : j - i;
                if (gap < excl) continue;
            }
            const double d = euclidean_distance(query_windows[i], ref_windows[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        out.indices[i] = best_j;
        out.distances[i] = best;
    }
    return out;
}

}  // namespace anomatch
