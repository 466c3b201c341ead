#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace anomatch {

enum class PatternRole { normal, anomalous };
enum class PatternOrigin { offline, online };

/// Provenance of one member window. Kept in memory for overlap grouping and
/// point labeling; never serialized.
struct MemberRef {
    std::string series;
    std::size_t start = 0;
    bool from_query = false;  // true when the window came from the detection-stage series
};

/// A metric pattern: the mean of a group of similar normalized windows,
/// summarized by size and radius so members can be discarded.
struct PatternCluster {
    int id = 0;
    std::vector<double> mean;  // normalized space, length m
    std::size_t size = 1;
    double radius = 0.0;
    PatternRole role = PatternRole::normal;
    std::set<std::string> labels;
    PatternOrigin origin = PatternOrigin::offline;
    std::vector<MemberRef> members;  // transient provenance
};

/// Full detector state for one metric curve.
struct PatternStore {
    std::size_t m = 0;
    double p = 0.0;
    std::size_t exclusion = 0;
    std::size_t offline_max_anomalous_size = 0;
    double d_n = 0.0;  // running max radius over normal clusters
    double d_a = 0.0;  // running max radius over anomalous clusters
    std::vector<PatternCluster> clusters;
    std::vector<std::vector<int>> groups;  // overlap groups, by cluster id

    std::vector<int> normal_ids() const;
    std::vector<int> anomalous_ids() const;
    const PatternCluster* find(int id) const;
    PatternCluster* find(int id);
    int next_id() const;

    /// Recomputes d_n / d_a from cluster radii (0 when a role is empty).
    void refresh_radius_maxima();

    /// Clears member provenance from every cluster.
    void drop_members();
};

std::string store_to_json(const PatternStore& store);
PatternStore store_from_json(const std::string& text);

void save_store(const PatternStore& store, const std::string& path);
PatternStore load_store(const std::string& path);

const char* to_string(PatternRole role);
const char* to_string(PatternOrigin origin);

}  // namespace anomatch
