#pragma once

#include <optional>

#include "anomatch/series.hpp"

namespace anomatch {

/// Per query window: start index of its nearest neighbor in the reference
/// series and the distance to it, both in min-max-normalized space.
struct ProfilePair {
    std::vector<std::size_t> indices;
    std::vector<double> distances;
};

/// Trivial-match exclusion half-width for self-joins: ceil(m / 2).
std::size_t self_join_exclusion(std::size_t window_length);

/// Nearest neighbor of every window of `series` among the other windows of
/// the same series, skipping |i - j| < exclusion. Requires length >= 2m.
ProfilePair self_join(const MetricSeries& series, std::size_t window_length,
                      unsigned workers = 0);

/// Nearest neighbor of every window of `query` among all windows of
/// `reference` (no exclusion zone).
ProfilePair cross_join(const MetricSeries& reference, const MetricSeries& query,
                       std::size_t window_length, unsigned workers = 0);

/// Exhaustive O(n^2) scan built directly on minmax_normalize and
/// euclidean_distance. Correctness oracle for the joins above; ties break
/// toward the smallest reference start index.
ProfilePair brute_force_spw(const MetricSeries& reference, const MetricSeries& query,
                            std::size_t window_length,
                            std::optional<std::size_t> exclusion = std::nullopt);

/// All windows of the series, min-max normalized, flattened row-major into
/// an (l - m + 1) x m matrix.
std::vector<double> normalized_window_matrix(const MetricSeries& series,
                                             std::size_t window_length);

}  // namespace anomatch
