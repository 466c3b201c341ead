#pragma once

#include <cstdint>
#include <vector>

#include "anomatch/eval.hpp"
#include "anomatch/series.hpp"

namespace anomatch::testsupport {

enum class BaseKind { sine, triangle, two_tone };

/// Smooth periodic base signal plus gaussian noise. Always-sloped shapes:
/// flat plateaus under per-window min-max normalization turn sensor noise
/// into full-scale shapes, which no pattern method can match.
std::vector<double> base_signal(BaseKind kind, std::size_t length, double period,
                                double amplitude, double noise_sigma, std::uint32_t seed);

enum class AnomalyKind { bump_up, bump_down, pulse, oscillation };

struct InjectionEvent {
    std::size_t start = 0;
    std::size_t length = 0;
    AnomalyKind kind = AnomalyKind::bump_up;
    double magnitude = 1.0;
};

/// Adds the event to `values` and marks the materially altered points in
/// `mask` (where the event envelope exceeds 5% of its magnitude). Events
/// taper smoothly to zero at both ends, as real incidents ramp in and out.
void inject(std::vector<double>& values, std::vector<std::uint8_t>& mask,
            const InjectionEvent& event);

MetricSeries labeled_series(const std::string& name, std::vector<double> values,
                            std::vector<std::uint8_t> mask);

/// 10 labeled curves of ~5000 points with ~1.5% anomalous points drawn from
/// three injection families, plus the run configuration they are built for.
/// Anomalies appear only after the anomaly-free prefix; the same families
/// occur in the offline and online segments.
std::vector<MetricSeries> injection_suite();
RunConfig injection_suite_config();

/// Curves whose online segment contains an anomaly family (oscillation)
/// never seen offline, for exercising adaptive pattern learning.
std::vector<MetricSeries> drift_suite();
RunConfig drift_suite_config(bool adaptive);

/// Varied anomaly-free series (several base kinds, one constant and one
/// random-walk curve) for identity checks.
std::vector<MetricSeries> anomaly_free_set(std::size_t count, std::size_t length);

/// Random-walk series for matrix-profile oracle checks.
MetricSeries random_walk(const std::string& name, std::size_t length, std::uint32_t seed);

}  // namespace anomatch::testsupport
