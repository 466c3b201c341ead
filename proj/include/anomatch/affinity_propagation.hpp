#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace anomatch {

struct ApOptions {
    double damping = 0.9;               // in [0.5, 1)
    std::size_t max_iterations = 1000;
    std::size_t convergence_window = 50;
    std::optional<double> preference;   // default: median off-diagonal similarity
};

struct ClusteringResult {
    std::vector<std::size_t> exemplars;   // ascending point indices
    std::vector<std::size_t> assignment;  // per point: its exemplar's point index
    bool converged = true;
};

/// Exemplar-based clustering with similarity s(i,k) = -||x_i - x_k||^2 and no
/// predefined cluster count. Deterministic: symmetry is broken with a tiny
/// index-derived jitter instead of random noise, and ties resolve toward the
/// lowest point index.
ClusteringResult affinity_propagation(const std::vector<std::vector<double>>& points,
                                      const ApOptions& options = {});

}  // namespace anomatch
