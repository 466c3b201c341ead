#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anomatch {

/// One univariate metric curve. Immutable after construction; labels, when
/// present, mark ground-truth anomalous points (1 = anomalous).
class MetricSeries {
public:
    MetricSeries(std::string name, std::vector<double> values);
    MetricSeries(std::string name, std::vector<double> values,
                 std::vector<std::int64_t> timestamps,
                 std::optional<std::vector<std::uint8_t>> labels = std::nullopt);

    const std::string& name() const { return name_; }
    std::size_t length() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    bool has_timestamps() const { return !timestamps_.empty(); }
    const std::vector<std::int64_t>& timestamps() const { return timestamps_; }

    bool has_labels() const { return labels_.has_value(); }
    const std::vector<std::uint8_t>& labels() const { return *labels_; }

    /// Copy of the slice [start, start+count), with timestamps/labels carried over.
    MetricSeries slice(std::size_t start, std::size_t count, const std::string& slice_name) const;

private:
    std::string name_;
    std::vector<double> values_;
    std::vector<std::int64_t> timestamps_;
    std::optional<std::vector<std::uint8_t>> labels_;
};

/// A verbatim window of a parent series.
struct Subsequence {
    std::string series_ref;
    std::size_t start = 0;
    std::vector<double> values;
};

/// Maps values onto [0, 1]. A constant window maps to the all-zero vector so
/// that every flat window is the same canonical point.
std::vector<double> minmax_normalize(std::span<const double> values);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// All l - m + 1 windows of the series, stride 1.
std::vector<Subsequence> sliding_subsequences(const MetricSeries& series, std::size_t window_length);

}  // namespace anomatch
