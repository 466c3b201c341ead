#pragma once

#include <set>
#include <span>
#include <string>

#include "anomatch/pattern_store.hpp"
#include "anomatch/series.hpp"

namespace anomatch {

enum class AdaptationKind { none, absorbed, created, role_switched };

/// Verdict for one window. matched_cluster_id is the nearest pattern at
/// decision time; adaptation reports what adapt() did to the store.
struct DetectionRecord {
    std::size_t window_start = 0;
    bool is_anomaly = false;
    int matched_cluster_id = -1;
    double distance = 0.0;
    std::set<std::string> recommended_labels;
    AdaptationKind adaptation = AdaptationKind::none;
    int adapted_cluster_id = -1;
};

/// Nearest-pattern verdict for a raw window (min-max normalized internally).
/// Read-only: the store is never modified.
DetectionRecord detect(const PatternStore& store, std::span<const double> window,
                       std::size_t window_start = 0);
DetectionRecord detect(const PatternStore& store, const Subsequence& window);

/// Same, for a window already in normalized pattern space.
DetectionRecord detect_normalized(const PatternStore& store,
                                  std::span<const double> pattern_window,
                                  std::size_t window_start = 0);

/// Nearest-pattern verdict plus pattern-set update: absorb the window into
/// its nearest cluster when it falls within that role's worst-case radius,
/// otherwise create a new single-member anomalous cluster. An online-created
/// anomalous cluster whose size outgrows the offline maximum switches to the
/// normal role.
DetectionRecord adapt(PatternStore& store, std::span<const double> window,
                      std::size_t window_start = 0);
DetectionRecord adapt(PatternStore& store, const Subsequence& window);
DetectionRecord adapt_normalized(PatternStore& store, std::span<const double> pattern_window,
                                 std::size_t window_start = 0);

/// Adds labels to the cluster and to every cluster in its overlap group.
void label_pattern(PatternStore& store, int cluster_id, const std::set<std::string>& labels);

}  // namespace anomatch
