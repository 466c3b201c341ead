#include "anomatch/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace anomatch {

double percentile_linear(std::vector<double> values, double p) {
    if (!(p > 0.0 && p < 100.0)) {
        throw std::invalid_argument("percentile must be in (0, 100)");
    }
    if (values.empty()) {
        throw std::invalid_argument("percentile of empty vector");
    }
    std::sort(values.begin(), values.end());
    const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = rank - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

SimilarityGraph build_graph(const ProfilePair& self_profile, const ProfilePair& cross_profile,
                            double p, bool mitigate_contamination,
                            const std::string& normal_series, const std::string& query_series) {
    if (!(p > 0.0 && p < 100.0)) {
        throw std::invalid_argument("percentile must be in (0, 100)");
    }
    SimilarityGraph graph;
    graph.normal_count = self_profile.indices.size();
    graph.query_count = cross_profile.indices.size();
    graph.normal_series = normal_series;
    graph.query_series = query_series;

    // An edge at exactly the threshold survives: with every distance equal
    // (e.g. the query series is a copy of the reference) nothing is deviated
    // and nothing may be pruned.
    const double cross_cut = percentile_linear(cross_profile.distances, p);
    double self_cut = 0.0;
    if (mitigate_contamination) {
        self_cut = percentile_linear(self_profile.distances, p);
    }

    std::set<std::pair<std::size_t, std::size_t>> edges;
    auto add_edge = [&edges](std::size_t u, std::size_t v) {
        if (u == v) return;
        edges.emplace(std::min(u, v), std::max(u, v));
    };
    for (std::size_t i = 0; i < graph.normal_count; ++i) {
        if (mitigate_contamination && self_profile.distances[i] > self_cut) continue;
        add_edge(i, self_profile.indices[i]);
    }
    for (std::size_t q = 0; q < graph.query_count; ++q) {
        if (cross_profile.distances[q] > cross_cut) continue;
        add_edge(graph.normal_count + q, cross_profile.indices[q]);
    }
    graph.edges.assign(edges.begin(), edges.end());
    return graph;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);  // keep the smallest index as root
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

GraphComponents connected_components(const SimilarityGraph& graph) {
    UnionFind uf(graph.node_count());
    for (const auto& [u, v] : graph.edges) {
        uf.unite(u, v);
    }
    std::vector<std::vector<std::size_t>> by_root(graph.node_count());
    for (std::size_t node = 0; node < graph.node_count(); ++node) {
        by_root[uf.find(node)].push_back(node);
    }
    GraphComponents out;
    for (auto& members : by_root) {
        if (members.empty()) continue;
        if (members.size() == 1) out.isolated.push_back(members.front());
        out.components.push_back(std::move(members));
    }
    return out;
}

std::vector<std::vector<double>> component_means(
    const std::vector<std::vector<std::size_t>>& components,
    const std::vector<double>& node_windows, std::size_t window_length) {
    std::vector<std::vector<double>> means;
    means.reserve(components.size());
    for (const auto& members : components) {
        std::vector<double> mean(window_length, 0.0);
        for (std::size_t node : members) {
            const double* row = node_windows.data() + node * window_length;
            for (std::size_t k = 0; k < window_length; ++k) mean[k] += row[k];
        }
        for (double& v : mean) v /= static_cast<double>(members.size());
        means.push_back(std::move(mean));
    }
    return means;
}

DiscoveryResult discover_patterns(const MetricSeries& normal, const MetricSeries& query,
                                  const DiscoveryOptions& options) {
    const std::size_t m = options.window_length;
    const ProfilePair nn = self_join(normal, m, options.workers);
    const ProfilePair na = cross_join(normal, query, m, options.workers);

    const SimilarityGraph graph = build_graph(nn, na, options.percentile,
                                              options.mitigate_contamination, normal.name(),
                                              query.name());
    const GraphComponents comps = connected_components(graph);

    // Normalized windows for every node, reference windows first.
    std::vector<double> node_windows = normalized_window_matrix(normal, m);
    {
        const auto query_windows = normalized_window_matrix(query, m);
        node_windows.insert(node_windows.end(), query_windows.begin(), query_windows.end());
    }

    const auto group_means = component_means(comps.components, node_windows, m);
    const ClusteringResult clustering = affinity_propagation(group_means, options.ap);

    std::vector<std::uint8_t> node_isolated(graph.node_count(), 0);
    for (std::size_t node : comps.isolated) node_isolated[node] = 1;

    // Gather component indices per exemplar, in exemplar order.
    PatternStore store;
    store.m = m;
    store.p = options.percentile;
    store.exclusion = self_join_exclusion(m);
    for (std::size_t e_pos = 0; e_pos < clustering.exemplars.size(); ++e_pos) {
        const std::size_t exemplar = clustering.exemplars[e_pos];
        PatternCluster cluster;
        cluster.id = static_cast<int>(e_pos);
        cluster.origin = PatternOrigin::offline;

        std::vector<std::size_t> member_nodes;
        for (std::size_t comp = 0; comp < comps.components.size(); ++comp) {
            if (clustering.assignment[comp] != exemplar) continue;
            member_nodes.insert(member_nodes.end(), comps.components[comp].begin(),
                                comps.components[comp].end());
        }
        std::sort(member_nodes.begin(), member_nodes.end());

        cluster.size = member_nodes.size();
        cluster.mean.assign(m, 0.0);
        for (std::size_t node : member_nodes) {
            const double* row = node_windows.data() + node * m;
            for (std::size_t k = 0; k < m; ++k) cluster.mean[k] += row[k];
        }
        for (double& v : cluster.mean) v /= static_cast<double>(cluster.size);

        cluster.radius = 0.0;
        bool all_isolated = true;
        for (std::size_t node : member_nodes) {
            const double* row = node_windows.data() + node * m;
            cluster.radius = std::max(
                cluster.radius, euclidean_distance(std::span<const double>(row, m), cluster.mean));
            all_isolated = all_isolated && node_isolated[node];
            MemberRef ref;
            if (node < graph.normal_count) {
                ref = MemberRef{graph.normal_series, node, false};
            } else {
                ref = MemberRef{graph.query_series, node - graph.normal_count, true};
            }
            cluster.members.push_back(std::move(ref));
        }
        if (cluster.size == 1) cluster.radius = 0.0;
        cluster.role = all_isolated ? PatternRole::anomalous : PatternRole::normal;
        store.clusters.push_back(std::move(cluster));
    }

    std::size_t max_anomalous_size = 0;
    for (const auto& c : store.clusters) {
        if (c.role == PatternRole::anomalous) {
            max_anomalous_size = std::max(max_anomalous_size, c.size);
        }
    }
    if (max_anomalous_size == 0) {
        // No anomalous cluster was found offline. A zero threshold would make
        // every online-created cluster switch to normal immediately, so fall
        // back to 0.5% of the windows processed offline.
        max_anomalous_size = static_cast<std::size_t>(
            std::ceil(0.005 * static_cast<double>(graph.node_count())));
        max_anomalous_size = std::max<std::size_t>(max_anomalous_size, 1);
    }
    store.offline_max_anomalous_size = max_anomalous_size;
    store.refresh_radius_maxima();
    group_overlapping_clusters(store);

    DiscoveryResult result;
    result.predictions.assign(query.length(), 0);
    for (const auto& c : store.clusters) {
        if (c.role != PatternRole::anomalous) continue;
        for (const auto& member : c.members) {
            if (!member.from_query) continue;
            for (std::size_t j = member.start; j < member.start + m; ++j) {
                result.predictions[j] = 1;
            }
        }
    }
    result.store = std::move(store);
    return result;
}

void group_overlapping_clusters(PatternStore& store) {
    struct Entry {
        bool from_query;
        std::string series;
        std::size_t start;
        std::size_t cluster_pos;
    };
    std::vector<Entry> entries;
    for (std::size_t pos = 0; pos < store.clusters.size(); ++pos) {
        for (const auto& member : store.clusters[pos].members) {
            entries.push_back(Entry{member.from_query, member.series, member.start, pos});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.from_query, a.series, a.start) < std::tie(b.from_query, b.series, b.start);
    });

    UnionFind uf(store.clusters.size());
    // All windows share length m, so overlap within one series is a chain
    // over the sorted starts.
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const Entry& prev = entries[i - 1];
        const Entry& cur = entries[i];
        if (prev.from_query != cur.from_query || prev.series != cur.series) continue;
        if (cur.start - prev.start < store.m) {
            uf.unite(prev.cluster_pos, cur.cluster_pos);
        }
    }
    std::vector<std::vector<int>> by_root(store.clusters.size());
    for (std::size_t pos = 0; pos < store.clusters.size(); ++pos) {
        by_root[uf.find(pos)].push_back(store.clusters[pos].id);
    }
    store.groups.clear();
    for (auto& group : by_root) {
        if (group.empty()) continue;
        std::sort(group.begin(), group.end());
        store.groups.push_back(std::move(group));
    }
}

}  // namespace anomatch
