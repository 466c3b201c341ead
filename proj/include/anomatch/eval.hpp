#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anomatch/detector.hpp"
#include "anomatch/discovery.hpp"
#include "anomatch/pattern_store.hpp"
#include "anomatch/series.hpp"

namespace anomatch {

struct SeriesMetrics {
    std::string name;
    std::size_t length = 0;  // points scored
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct EvalReport {
    std::vector<SeriesMetrics> per_series;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f1 = 0.0;
};

/// Point-level counts. When TP+FP+FN = 0 (an all-normal series predicted
/// all-normal) precision, recall and F1 are all 1; other 0/0 cases are 0.
SeriesMetrics point_metrics(const std::vector<std::uint8_t>& pred,
                            const std::vector<std::uint8_t>& truth,
                            const std::string& name = "");

/// Length-weighted aggregation of per-series metrics.
EvalReport aggregate(std::vector<SeriesMetrics> per_series);

std::string format_report(const EvalReport& report);

/// CSV with header `timestamp,value,label` (label column optional).
MetricSeries load_series_csv(const std::string& path);

/// Every *.csv under the directory, sorted by filename.
std::vector<MetricSeries> load_series_dir(const std::string& dir);

/// Window-by-window replay with stride 1 and causal point labeling: each
/// point takes the verdict of the window ending at it; the first m-1 points
/// inherit the first full window's verdict.
struct StreamResult {
    std::vector<DetectionRecord> records;   // one per window start
    std::vector<std::uint8_t> point_pred;   // one per point
    std::vector<int> point_cluster;         // matched cluster per point
    std::vector<std::string> point_labels;  // semicolon-joined recommended labels
};
StreamResult run_stream(PatternStore& store, const MetricSeries& series, bool adaptive);

void write_predictions_csv(const std::string& path, const MetricSeries& series,
                           const std::vector<std::uint8_t>& point_pred,
                           const std::vector<int>& point_cluster,
                           const std::vector<std::string>& point_labels);

/// Prediction file reader for scoring: returns the `pred` column.
std::vector<std::uint8_t> load_predictions_csv(const std::string& path);

struct RunConfig {
    std::size_t window_length = 15;
    double percentile = 99.5;
    // >= 1 is an absolute point index; a value in (0, 1) is a fraction of
    // the series length. anomaly_free_end < offline_end <= length.
    double anomaly_free_end = 0.0;
    double offline_end = 0.0;
    bool adaptive = false;
    bool mitigate_contamination = false;
    ApOptions ap;
    unsigned workers = 0;
};

struct SeriesSplits {
    std::size_t anomaly_free_end = 0;
    std::size_t offline_end = 0;
};
SeriesSplits resolve_splits(const RunConfig& config, std::size_t length);

RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path, std::string* dataset_dir = nullptr);

struct OfflineOutcome {
    EvalReport report;
    std::vector<PatternStore> stores;
    std::vector<std::vector<std::uint8_t>> predictions;  // over each offline segment
};

/// Per series: carve the anomaly-free prefix, discover patterns over the
/// offline segment, score the predictions against the labels.
OfflineOutcome run_offline_experiment(const RunConfig& config,
                                      const std::vector<MetricSeries>& series_set);

/// Replays each online segment through detect (adaptive=false) or adapt
/// (adaptive=true) against its store and scores causally labeled points.
EvalReport run_online_experiment(const RunConfig& config,
                                 const std::vector<MetricSeries>& series_set,
                                 std::vector<PatternStore>& stores);

}  // namespace anomatch
