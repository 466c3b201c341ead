#include "anomatch/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace anomatch {

SeriesMetrics point_metrics(const std::vector<std::uint8_t>& pred,
                            const std::vector<std::uint8_t>& truth, const std::string& name) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("point_metrics: prediction/truth length mismatch (" +
                                    std::to_string(pred.size()) + " vs " +
                                    std::to_string(truth.size()) + ")");
    }
    SeriesMetrics m;
    m.name = name;
    m.length = pred.size();
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred[i] != 0;
        const bool t = truth[i] != 0;
        if (p && t) ++m.tp;
        else if (p && !t) ++m.fp;
        else if (!p && t) ++m.fn;
    }
    const bool perfect_empty = (m.tp + m.fp + m.fn) == 0;
    m.precision = (m.tp + m.fp) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp)
                                    : (perfect_empty ? 1.0 : 0.0);
    m.recall = (m.tp + m.fn) > 0 ? static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn)
                                 : (perfect_empty ? 1.0 : 0.0);
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : (perfect_empty ? 1.0 : 0.0);
    return m;
}

EvalReport aggregate(std::vector<SeriesMetrics> per_series) {
    EvalReport report;
    double total_weight = 0.0;
    for (const auto& m : per_series) {
        const double w = static_cast<double>(m.length);
        report.weighted_precision += m.precision * w;
        report.weighted_recall += m.recall * w;
        report.weighted_f1 += m.f1 * w;
        total_weight += w;
    }
    if (total_weight > 0.0) {
        report.weighted_precision /= total_weight;
        report.weighted_recall /= total_weight;
        report.weighted_f1 /= total_weight;
    }
    report.per_series = std::move(per_series);
    return report;
}

std::string format_report(const EvalReport& report) {
    std::ostringstream out;
    out << "series                       points       TP       FP       FN   precision   recall"
           "       F1\n";
    auto row = [&out](const std::string& name, std::size_t points, std::size_t tp, std::size_t fp,
                      std::size_t fn, double precision, double recall, double f1) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%-26s %8zu %8zu %8zu %8zu   %9.3f %8.3f %8.3f\n",
                      name.c_str(), points, tp, fp, fn, precision, recall, f1);
        out << buf;
    };
    std::size_t total_points = 0, tp = 0, fp = 0, fn = 0;
    for (const auto& m : report.per_series) {
        row(m.name, m.length, m.tp, m.fp, m.fn, m.precision, m.recall, m.f1);
        total_points += m.length;
        tp += m.tp;
        fp += m.fp;
        fn += m.fn;
    }
    row("[weighted]", total_points, tp, fp, fn, report.weighted_precision, report.weighted_recall,
        report.weighted_f1);
    return out.str();
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double_field(const std::string& field, const std::string& path, std::size_t line_no,
                          const char* what) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad " + what + " '" +
                                 field + "'");
    }
    if (!std::isfinite(value)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-finite " + what);
    }
    return value;
}

std::int64_t parse_int_field(const std::string& field, const std::string& path,
                             std::size_t line_no, const char* what) {
    std::int64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad " + what + " '" +
                                 field + "'");
    }
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

MetricSeries load_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(path + ": empty file");
    }
    line = strip_cr(line);
    bool has_label = false;
    if (line == "timestamp,value,label") {
        has_label = true;
    } else if (line != "timestamp,value") {
        throw std::runtime_error(path + ":1: expected header 'timestamp,value[,label]', got '" +
                                 line + "'");
    }
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    std::vector<std::uint8_t> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != (has_label ? 3u : 2u)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(has_label ? 3 : 2) + " fields, got " +
                                     std::to_string(fields.size()));
        }
        const std::int64_t ts = parse_int_field(fields[0], path, line_no, "timestamp");
        if (!timestamps.empty() && ts <= timestamps.back()) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": timestamps not strictly increasing");
        }
        timestamps.push_back(ts);
        values.push_back(parse_double_field(fields[1], path, line_no, "value"));
        if (has_label) {
            const std::int64_t lab = parse_int_field(fields[2], path, line_no, "label");
            if (lab != 0 && lab != 1) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": label must be 0 or 1");
            }
            labels.push_back(static_cast<std::uint8_t>(lab));
        }
    }
    if (values.empty()) {
        throw std::runtime_error(path + ": no data rows");
    }
    const std::string name = std::filesystem::path(path).stem().string();
    if (has_label) {
        return MetricSeries(name, std::move(values), std::move(timestamps), std::move(labels));
    }
    return MetricSeries(name, std::move(values), std::move(timestamps));
}

std::vector<MetricSeries> load_series_dir(const std::string& dir) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            paths.push_back(entry.path());
        }
    }
    if (paths.empty()) {
        throw std::runtime_error("no .csv files under '" + dir + "'");
    }
    std::sort(paths.begin(), paths.end());
    std::vector<MetricSeries> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(load_series_csv(p.string()));
    return out;
}

StreamResult run_stream(PatternStore& store, const MetricSeries& series, bool adaptive) {
    const std::size_t m = store.m;
    if (series.length() < m) {
        throw std::invalid_argument("series '" + series.name() + "' shorter than pattern length");
    }
    const auto& values = series.values();
    const std::size_t n_windows = series.length() - m + 1;

    StreamResult result;
    result.records.reserve(n_windows);
    for (std::size_t s = 0; s < n_windows; ++s) {
        const std::span<const double> window(values.data() + s, m);
        result.records.push_back(adaptive ? adapt(store, window, s) : detect(store, window, s));
    }

    result.point_pred.assign(series.length(), 0);
    result.point_cluster.assign(series.length(), -1);
    result.point_labels.assign(series.length(), "");
    auto apply = [&result](std::size_t point, const DetectionRecord& rec) {
        result.point_pred[point] = rec.is_anomaly ? 1 : 0;
        result.point_cluster[point] = rec.matched_cluster_id;
        std::string joined;
        for (const auto& label : rec.recommended_labels) {
            if (!joined.empty()) joined += ';';
            joined += label;
        }
        result.point_labels[point] = std::move(joined);
    };
    for (std::size_t j = 0; j < series.length(); ++j) {
        // Causal: the window ending at j; the first m-1 points take the first
        // full window's verdict.
        const std::size_t window_start = j + 1 >= m ? j + 1 - m : 0;
        apply(j, result.records[window_start]);
    }
    return result;
}

void write_predictions_csv(const std::string& path, const MetricSeries& series,
                           const std::vector<std::uint8_t>& point_pred,
                           const std::vector<int>& point_cluster,
                           const std::vector<std::string>& point_labels) {
    if (point_pred.size() != series.length() || point_cluster.size() != series.length() ||
        point_labels.size() != series.length()) {
        throw std::invalid_argument("write_predictions_csv: column lengths differ from series");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << "timestamp,pred,cluster_id,labels\n";
    for (std::size_t i = 0; i < series.length(); ++i) {
        const std::int64_t ts =
            series.has_timestamps() ? series.timestamps()[i] : static_cast<std::int64_t>(i);
        out << ts << ',' << int(point_pred[i]) << ',' << point_cluster[i] << ','
            << point_labels[i] << '\n';
    }
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

std::vector<std::uint8_t> load_predictions_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "timestamp,pred,cluster_id,labels") {
        throw std::runtime_error(path + ":1: expected header 'timestamp,pred,cluster_id,labels'");
    }
    std::vector<std::uint8_t> preds;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 4) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 4 fields");
        }
        const std::int64_t pred = parse_int_field(fields[1], path, line_no, "pred");
        if (pred != 0 && pred != 1) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": pred must be 0 or 1");
        }
        preds.push_back(static_cast<std::uint8_t>(pred));
    }
    return preds;
}

SeriesSplits resolve_splits(const RunConfig& config, std::size_t length) {
    auto resolve = [length](double v, const char* what) {
        if (v > 0.0 && v < 1.0) {
            return static_cast<std::size_t>(v * static_cast<double>(length));
        }
        if (v >= 1.0 && v == std::floor(v)) {
            return static_cast<std::size_t>(v);
        }
        throw std::invalid_argument(std::string(what) +
                                    " must be a fraction in (0,1) or a positive index");
    };
    SeriesSplits splits;
    splits.anomaly_free_end = resolve(config.anomaly_free_end, "anomaly_free_end");
    splits.offline_end = resolve(config.offline_end, "offline_end");
    if (!(splits.anomaly_free_end < splits.offline_end && splits.offline_end <= length)) {
        throw std::invalid_argument("splits must satisfy 0 < anomaly_free_end < offline_end <= " +
                                    std::to_string(length));
    }
    return splits;
}

RunConfig run_config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("run config: malformed JSON: ") + e.what());
    }
    RunConfig config;
    config.window_length = doc.at("m").get<std::size_t>();
    config.percentile = doc.at("p").get<double>();
    config.anomaly_free_end = doc.at("anomaly_free_end").get<double>();
    config.offline_end = doc.at("offline_end").get<double>();
    config.adaptive = doc.value("adaptive", false);
    config.mitigate_contamination = doc.value("mitigate_contamination", false);
    config.workers = doc.value("workers", 0u);
    if (doc.contains("ap")) {
        const auto& ap = doc["ap"];
        config.ap.damping = ap.value("damping", config.ap.damping);
        config.ap.max_iterations = ap.value("max_iterations", config.ap.max_iterations);
        config.ap.convergence_window = ap.value("convergence_window", config.ap.convergence_window);
        if (ap.contains("preference")) config.ap.preference = ap["preference"].get<double>();
    }
    return config;
}

RunConfig load_run_config(const std::string& path, std::string* dataset_dir) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (dataset_dir) {
        nlohmann::json doc = nlohmann::json::parse(text);
        *dataset_dir = doc.value("dataset_dir", "");
    }
    return run_config_from_json(text);
}

OfflineOutcome run_offline_experiment(const RunConfig& config,
                                      const std::vector<MetricSeries>& series_set) {
    OfflineOutcome outcome;
    std::vector<SeriesMetrics> per_series;
    for (const auto& series : series_set) {
        const SeriesSplits splits = resolve_splits(config, series.length());
        const MetricSeries normal =
            series.slice(0, splits.anomaly_free_end, series.name() + "#normal");
        const MetricSeries offline_segment = series.slice(
            splits.anomaly_free_end, splits.offline_end - splits.anomaly_free_end, series.name());

        DiscoveryOptions options;
        options.window_length = config.window_length;
        options.percentile = config.percentile;
        options.mitigate_contamination = config.mitigate_contamination;
        options.ap = config.ap;
        options.workers = config.workers;
        DiscoveryResult discovery = discover_patterns(normal, offline_segment, options);
        discovery.store.drop_members();

        std::vector<std::uint8_t> truth(offline_segment.length(), 0);
        if (offline_segment.has_labels()) {
            truth = offline_segment.labels();
        }
        per_series.push_back(point_metrics(discovery.predictions, truth, series.name()));
        outcome.stores.push_back(std::move(discovery.store));
        outcome.predictions.push_back(std::move(discovery.predictions));
    }
    outcome.report = aggregate(std::move(per_series));
    return outcome;
}

EvalReport run_online_experiment(const RunConfig& config,
                                 const std::vector<MetricSeries>& series_set,
                                 std::vector<PatternStore>& stores) {
    if (series_set.size() != stores.size()) {
        throw std::invalid_argument("run_online_experiment: one store per series required");
    }
    std::vector<SeriesMetrics> per_series;
    for (std::size_t i = 0; i < series_set.size(); ++i) {
        const auto& series = series_set[i];
        const SeriesSplits splits = resolve_splits(config, series.length());
        if (splits.offline_end >= series.length()) {
            throw std::invalid_argument("series '" + series.name() +
                                        "' has no online segment after offline_end");
        }
        const MetricSeries online_segment =
            series.slice(splits.offline_end, series.length() - splits.offline_end, series.name());
        const StreamResult stream = run_stream(stores[i], online_segment, config.adaptive);
        std::vector<std::uint8_t> truth(online_segment.length(), 0);
        if (online_segment.has_labels()) {
            truth = online_segment.labels();
        }
        per_series.push_back(point_metrics(stream.point_pred, truth, series.name()));
    }
    return aggregate(std::move(per_series));
}

}  // namespace anomatch
