#include "anomatch/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anomatch {

namespace {

void check_window(const PatternStore& store, std::span<const double> window) {
    if (store.clusters.empty()) {
        throw std::runtime_error("uninitialized detector: pattern store has no clusters");
    }
    if (window.size() != store.m) {
        throw std::invalid_argument("window length " + std::to_string(window.size()) +
                                    " does not match pattern length " + std::to_string(store.m));
    }
}

// Nearest cluster by mean distance; ties break toward the lowest cluster id.
std::pair<std::size_t, double> nearest_cluster(const PatternStore& store,
                                               std::span<const double> pattern_window) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    int best_id = std::numeric_limits<int>::max();
    for (std::size_t pos = 0; pos < store.clusters.size(); ++pos) {
        const auto& c = store.clusters[pos];
        const double d = euclidean_distance(pattern_window, c.mean);
        if (d < best || (d == best && c.id < best_id)) {
            best = d;
            best_pos = pos;
            best_id = c.id;
        }
    }
    return {best_pos, best};
}

}  // namespace

DetectionRecord detect_normalized(const PatternStore& store,
                                  std::span<const double> pattern_window,
                                  std::size_t window_start) {
    check_window(store, pattern_window);
    const auto [pos, distance] = nearest_cluster(store, pattern_window);
    const PatternCluster& cluster = store.clusters[pos];
    DetectionRecord record;
    record.window_start = window_start;
    record.matched_cluster_id = cluster.id;
    record.distance = distance;
    record.is_anomaly = cluster.role == PatternRole::anomalous;
    if (record.is_anomaly) {
        record.recommended_labels = cluster.labels;
    }
    return record;
}

DetectionRecord detect(const PatternStore& store, std::span<const double> window,
                       std::size_t window_start) {
    check_window(store, window);
    const auto normalized = minmax_normalize(window);
    return detect_normalized(store, normalized, window_start);
}

DetectionRecord detect(const PatternStore& store, const Subsequence& window) {
    return detect(store, window.values, window.start);
}

DetectionRecord adapt_normalized(PatternStore& store, std::span<const double> pattern_window,
                                 std::size_t window_start) {
    check_window(store, pattern_window);
    const auto [pos, distance] = nearest_cluster(store, pattern_window);
    PatternCluster& cluster = store.clusters[pos];

    DetectionRecord record;
    record.window_start = window_start;
    record.matched_cluster_id = cluster.id;
    record.distance = distance;
    record.is_anomaly = cluster.role == PatternRole::anomalous;
    if (record.is_anomaly) {
        record.recommended_labels = cluster.labels;
    }

    const double role_max = cluster.role == PatternRole::anomalous ? store.d_a : store.d_n;
    if (distance < role_max) {
        // Absorb: exact incremental mean, worst-case radius bound.
        const double old_size = static_cast<double>(cluster.size);
        std::vector<double> new_mean(store.m);
        for (std::size_t k = 0; k < store.m; ++k) {
            new_mean[k] = (cluster.mean[k] * old_size + pattern_window[k]) / (old_size + 1.0);
        }
        const double mean_shift = euclidean_distance(cluster.mean, new_mean);
        const double worst_case = mean_shift + cluster.radius;
        const double member_dist = euclidean_distance(pattern_window, new_mean);
        cluster.mean = std::move(new_mean);
        cluster.size += 1;
        cluster.radius = std::max(member_dist, worst_case);

        record.adaptation = AdaptationKind::absorbed;
        record.adapted_cluster_id = cluster.id;
        if (cluster.role == PatternRole::anomalous && cluster.origin == PatternOrigin::online &&
            cluster.size > store.offline_max_anomalous_size) {
            cluster.role = PatternRole::normal;
            record.adaptation = AdaptationKind::role_switched;
        }
        store.refresh_radius_maxima();
    } else {
        // Unseen pattern: new single-member anomalous cluster.
        PatternCluster created;
        created.id = store.next_id();
        created.mean.assign(pattern_window.begin(), pattern_window.end());
        created.size = 1;
        created.radius = 0.0;
        created.role = PatternRole::anomalous;
        created.origin = PatternOrigin::online;
        store.clusters.push_back(std::move(created));

        record.is_anomaly = true;
        record.matched_cluster_id = store.clusters.back().id;
        record.distance = 0.0;
        record.recommended_labels.clear();
        record.adaptation = AdaptationKind::created;
        record.adapted_cluster_id = store.clusters.back().id;
    }
    return record;
}

DetectionRecord adapt(PatternStore& store, std::span<const double> window,
                      std::size_t window_start) {
    check_window(store, window);
    const auto normalized = minmax_normalize(window);
    return adapt_normalized(store, normalized, window_start);
}

DetectionRecord adapt(PatternStore& store, const Subsequence& window) {
    return adapt(store, window.values, window.start);
}

void label_pattern(PatternStore& store, int cluster_id, const std::set<std::string>& labels) {
    PatternCluster* target = store.find(cluster_id);
    if (!target) {
        throw std::invalid_argument("unknown pattern id " + std::to_string(cluster_id));
    }
    const std::vector<int>* group = nullptr;
    for (const auto& g : store.groups) {
        if (std::find(g.begin(), g.end(), cluster_id) != g.end()) {
            group = &g;
            break;
        }
    }
    if (group) {
        for (int id : *group) {
            PatternCluster* c = store.find(id);
            if (c) c->labels.insert(labels.begin(), labels.end());
        }
    } else {
        target->labels.insert(labels.begin(), labels.end());
    }
}

}  // namespace anomatch
