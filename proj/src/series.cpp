#include "anomatch/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anomatch {

MetricSeries::MetricSeries(std::string name, std::vector<double> values)
    : MetricSeries(std::move(name), std::move(values), {}, std::nullopt) {}

MetricSeries::MetricSeries(std::string name, std::vector<double> values,
                           std::vector<std::int64_t> timestamps,
                           std::optional<std::vector<std::uint8_t>> labels)
    : name_(std::move(name)),
      values_(std::move(values)),
      timestamps_(std::move(timestamps)),
      labels_(std::move(labels)) {
    if (values_.empty()) {
        throw std::invalid_argument("series '" + name_ + "' has no values");
    }
    if (!timestamps_.empty()) {
        if (timestamps_.size() != values_.size()) {
            throw std::invalid_argument("series '" + name_ + "': timestamp/value length mismatch");
        }
        for (std::size_t i = 1; i < timestamps_.size(); ++i) {
            if (timestamps_[i] <= timestamps_[i - 1]) {
                throw std::invalid_argument("series '" + name_ +
                                            "': timestamps not strictly increasing at row " +
                                            std::to_string(i));
            }
        }
    }
    if (labels_ && labels_->size() != values_.size()) {
        throw std::invalid_argument("series '" + name_ + "': label/value length mismatch");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("series '" + name_ + "' contains a non-finite value");
        }
    }
}

MetricSeries MetricSeries::slice(std::size_t start, std::size_t count,
                                 const std::string& slice_name) const {
    if (start + count > values_.size() || count == 0) {
        throw std::out_of_range("slice [" + std::to_string(start) + ", " +
                                std::to_string(start + count) + ") exceeds series of length " +
                                std::to_string(values_.size()));
    }
    std::vector<double> vals(values_.begin() + start, values_.begin() + start + count);
    std::vector<std::int64_t> ts;
    if (!timestamps_.empty()) {
        ts.assign(timestamps_.begin() + start, timestamps_.begin() + start + count);
    }
    std::optional<std::vector<std::uint8_t>> lab;
    if (labels_) {
        lab.emplace(labels_->begin() + start, labels_->begin() + start + count);
    }
    return MetricSeries(slice_name, std::move(vals), std::move(ts), std::move(lab));
}

std::vector<double> minmax_normalize(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("empty subsequence");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    std::vector<double> out(values.size());
    if (range == 0.0) {
        return out;  // flat window: one canonical point
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - lo) / range;
    }
    return out;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("euclidean_distance: length mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                    ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<Subsequence> sliding_subsequences(const MetricSeries& series,
                                              std::size_t window_length) {
    const std::size_t l = series.length();
    if (window_length == 0) {
        throw std::invalid_argument("window length must be positive");
    }
    if (window_length > l) {
        throw std::invalid_argument("window exceeds series");
    }
    std::vector<Subsequence> out;
    out.reserve(l - window_length + 1);
    const auto& vals = series.values();
    for (std::size_t start = 0; start + window_length <= l; ++start) {
        out.push_back(Subsequence{
            series.name(), start,
            std::vector<double>(vals.begin() + start, vals.begin() + start + window_length)});
    }
    return out;
}

}  // namespace anomatch
