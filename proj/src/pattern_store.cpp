#include "anomatch/pattern_store.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace anomatch {

namespace {
constexpr int kStoreVersion = 1;
}

std::vector<int> PatternStore::normal_ids() const {
    std::vector<int> out;
    for (const auto& c : clusters) {
        if (c.role == PatternRole::normal) out.push_back(c.id);
    }
    return out;
}

std::vector<int> PatternStore::anomalous_ids() const {
    std::vector<int> out;
    for (const auto& c : clusters) {
        if (c.role == PatternRole::anomalous) out.push_back(c.id);
    }
    return out;
}

const PatternCluster* PatternStore::find(int id) const {
    for (const auto& c : clusters) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

PatternCluster* PatternStore::find(int id) {
    for (auto& c : clusters) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

int PatternStore::next_id() const {
    int max_id = -1;
    for (const auto& c : clusters) max_id = std::max(max_id, c.id);
    return max_id + 1;
}

void PatternStore::refresh_radius_maxima() {
    d_n = 0.0;
    d_a = 0.0;
    for (const auto& c : clusters) {
        double& d = (c.role == PatternRole::normal) ? d_n : d_a;
        d = std::max(d, c.radius);
    }
}

void PatternStore::drop_members() {
    for (auto& c : clusters) {
        c.members.clear();
        c.members.shrink_to_fit();
    }
}

const char* to_string(PatternRole role) {
    return role == PatternRole::normal ? "normal" : "anomalous";
}

const char* to_string(PatternOrigin origin) {
    return origin == PatternOrigin::offline ? "offline" : "online";
}

namespace {

PatternRole role_from_string(const std::string& s) {
    if (s == "normal") return PatternRole::normal;
    if (s == "anomalous") return PatternRole::anomalous;
    throw std::runtime_error("pattern store: unknown role '" + s + "'");
}

PatternOrigin origin_from_string(const std::string& s) {
    if (s == "offline") return PatternOrigin::offline;
    if (s == "online") return PatternOrigin::online;
    throw std::runtime_error("pattern store: unknown origin '" + s + "'");
}

}  // namespace

std::string store_to_json(const PatternStore& store) {
    nlohmann::ordered_json doc;
    doc["version"] = kStoreVersion;
    doc["m"] = store.m;
    doc["p"] = store.p;
    doc["exclusion"] = store.exclusion;
    doc["offline_max_anomalous_size"] = store.offline_max_anomalous_size;
    doc["d_n"] = store.d_n;
    doc["d_a"] = store.d_a;
    doc["clusters"] = nlohmann::ordered_json::array();
    for (const auto& c : store.clusters) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["role"] = to_string(c.role);
        jc["size"] = c.size;
        jc["radius"] = c.radius;
        jc["mean"] = c.mean;
        jc["labels"] = c.labels;
        jc["origin"] = to_string(c.origin);
        doc["clusters"].push_back(std::move(jc));
    }
    if (!store.groups.empty()) {
        doc["groups"] = store.groups;
    }
    return doc.dump(2) + "\n";
}

PatternStore store_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("pattern store: malformed JSON: ") + e.what());
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer()) {
        throw std::runtime_error("pattern store: missing version tag (expected version " +
                                 std::to_string(kStoreVersion) + ")");
    }
    const int version = doc["version"].get<int>();
    if (version != kStoreVersion) {
        throw std::runtime_error("pattern store: unsupported version " + std::to_string(version) +
                                 " (expected " + std::to_string(kStoreVersion) + ")");
    }
    PatternStore store;
    store.m = doc.at("m").get<std::size_t>();
    store.p = doc.at("p").get<double>();
    store.exclusion = doc.at("exclusion").get<std::size_t>();
    store.offline_max_anomalous_size = doc.at("offline_max_anomalous_size").get<std::size_t>();
    store.d_n = doc.at("d_n").get<double>();
    store.d_a = doc.at("d_a").get<double>();
    for (const auto& jc : doc.at("clusters")) {
        PatternCluster c;
        c.id = jc.at("id").get<int>();
        c.role = role_from_string(jc.at("role").get<std::string>());
        c.size = jc.at("size").get<std::size_t>();
        c.radius = jc.at("radius").get<double>();
        c.mean = jc.at("mean").get<std::vector<double>>();
        c.labels = jc.at("labels").get<std::set<std::string>>();
        c.origin = origin_from_string(jc.at("origin").get<std::string>());
        store.clusters.push_back(std::move(c));
    }
    if (doc.contains("groups")) {
        store.groups = doc["groups"].get<std::vector<std::vector<int>>>();
    }

    // Validation: ids must be unique (a duplicate would put one id in both
    // role partitions), means must match m, sizes must be positive.
    std::vector<int> ids;
    for (const auto& c : store.clusters) {
        ids.push_back(c.id);
        if (c.mean.size() != store.m) {
            throw std::runtime_error("pattern store: cluster " + std::to_string(c.id) +
                                     " mean length does not match m");
        }
        if (c.size == 0) {
            throw std::runtime_error("pattern store: cluster " + std::to_string(c.id) +
                                     " has size 0");
        }
        if (!(c.radius >= 0.0) || !std::isfinite(c.radius)) {
            throw std::runtime_error("pattern store: cluster " + std::to_string(c.id) +
                                     " has invalid radius");
        }
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw std::runtime_error(
            "pattern store: duplicate cluster id (normal/anomalous partitions overlap)");
    }
    for (const auto& group : store.groups) {
        for (int id : group) {
            if (!store.find(id)) {
                throw std::runtime_error("pattern store: group references unknown cluster id " +
                                         std::to_string(id));
            }
        }
    }
    PatternStore check = store;
    check.refresh_radius_maxima();
    if (check.d_n != store.d_n || check.d_a != store.d_a) {
        throw std::runtime_error("pattern store: d_n/d_a do not match cluster radii");
    }
    return store;
}

void save_store(const PatternStore& store, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("pattern store: cannot open '" + path + "' for writing");
    }
    out << store_to_json(store);
    if (!out) {
        throw std::runtime_error("pattern store: write to '" + path + "' failed");
    }
}

PatternStore load_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("pattern store: cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return store_from_json(text);
}

}  // namespace anomatch
