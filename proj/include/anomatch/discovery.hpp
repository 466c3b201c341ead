#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anomatch/affinity_propagation.hpp"
#include "anomatch/matrix_profile.hpp"
#include "anomatch/pattern_store.hpp"
#include "anomatch/series.hpp"

namespace anomatch {

/// Nearest-neighbor similarity graph over the windows of a reference series
/// and a query series. Nodes [0, normal_count) are reference windows; nodes
/// [normal_count, normal_count + query_count) are query windows.
struct SimilarityGraph {
    std::size_t normal_count = 0;
    std::size_t query_count = 0;
    std::string normal_series;
    std::string query_series;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // undirected, u < v

    std::size_t node_count() const { return normal_count + query_count; }
};

struct GraphComponents {
    std::vector<std::vector<std::size_t>> components;  // sorted node sets
    std::vector<std::size_t> isolated;                 // singleton components (N_i)
};

/// Linear-interpolation percentile over the sorted values; p in (0, 100).
double percentile_linear(std::vector<double> values, double p);

/// Links every window to its nearest neighbor, then breaks query-side links
/// whose distance exceeds the p-th percentile of the query distances. With
/// mitigate_contamination, reference self-links above the same percentile of
/// the reference distances are broken too.
SimilarityGraph build_graph(const ProfilePair& self_profile, const ProfilePair& cross_profile,
                            double p, bool mitigate_contamination = false,
                            const std::string& normal_series = "normal",
                            const std::string& query_series = "query");

GraphComponents connected_components(const SimilarityGraph& graph);

/// Element-wise mean of each component's member windows. node_windows is the
/// normalized window matrix for all nodes, row-major with rows of length m.
std::vector<std::vector<double>> component_means(
    const std::vector<std::vector<std::size_t>>& components,
    const std::vector<double>& node_windows, std::size_t window_length);

struct DiscoveryOptions {
    std::size_t window_length = 15;
    double percentile = 99.5;
    bool mitigate_contamination = false;
    ApOptions ap;
    unsigned workers = 0;
};

struct DiscoveryResult {
    PatternStore store;
    std::vector<std::uint8_t> predictions;  // per point of the query series
};

/// Full offline pipeline: self-join the anomaly-free series, cross-join the
/// query series against it, group similar windows, cluster the group means,
/// and classify each cluster as anomalous when every member window stayed
/// isolated in the graph. Cluster means/sizes/radii are computed over all
/// member windows. The returned store still carries member provenance.
DiscoveryResult discover_patterns(const MetricSeries& normal, const MetricSeries& query,
                                  const DiscoveryOptions& options);

/// Partitions clusters into overlap groups: clusters sharing at least one
/// point of some member window (in the same series) are grouped, closed
/// transitively. Requires member provenance; result is stored in
/// store.groups.
void group_overlapping_clusters(PatternStore& store);

}  // namespace anomatch
