#include "support/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace anomatch::testsupport {

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

std::vector<double> base_signal(BaseKind kind, std::size_t length, double period,
                                double amplitude, double noise_sigma, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    const double phase = static_cast<double>(seed % 7) / 7.0 * kTau;
    std::vector<double> out(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double t = static_cast<double>(i);
        double v = 0.0;
        switch (kind) {
            case BaseKind::sine:
                v = amplitude * std::sin(kTau * t / period + phase);
                break;
            case BaseKind::triangle: {
                const double frac = std::fmod(t / period + phase / kTau, 1.0);
                v = amplitude * (4.0 * std::abs(frac - 0.5) - 1.0);
                break;
            }
            case BaseKind::two_tone:
                v = amplitude * (std::sin(kTau * t / period + phase) +
                                 0.45 * std::sin(kTau * t / (period / 3.7) + 1.3));
                break;
        }
        if (noise_sigma > 0.0) v += gauss(rng);
        out[i] = v;
    }
    return out;
}

void inject(std::vector<double>& values, std::vector<std::uint8_t>& mask,
            const InjectionEvent& event) {
    if (event.start + event.length > values.size() || mask.size() != values.size()) {
        throw std::invalid_argument("injection event out of range");
    }
    if (event.length < 2) {
        throw std::invalid_argument("injection event too short");
    }
    for (std::size_t t = 0; t < event.length; ++t) {
        const double x = static_cast<double>(t) / static_cast<double>(event.length - 1);
        double envelope = 0.5 * (1.0 - std::cos(kTau * x));  // 0 at both ends, 1 mid-event
        double delta = 0.0;
        switch (event.kind) {
            case AnomalyKind::bump_up:
                delta = event.magnitude * envelope;
                break;
            case AnomalyKind::bump_down:
                delta = -event.magnitude * envelope;
                break;
            case AnomalyKind::pulse: {
                const double tri = 1.0 - std::abs(2.0 * x - 1.0);
                envelope = tri * tri;
                delta = event.magnitude * envelope;
                break;
            }
            case AnomalyKind::oscillation:
                delta = event.magnitude * envelope *
                        std::sin(kTau * static_cast<double>(t) / 4.0);
                break;
        }
        values[event.start + t] += delta;
        if (envelope > 0.05) mask[event.start + t] = 1;
    }
}

MetricSeries labeled_series(const std::string& name, std::vector<double> values,
                            std::vector<std::uint8_t> mask) {
    return MetricSeries(name, std::move(values), {}, std::move(mask));
}

namespace {

BaseKind kind_for(std::size_t i) {
    switch (i % 3) {
        case 0: return BaseKind::sine;
        case 1: return BaseKind::triangle;
        default: return BaseKind::two_tone;
    }
}

// Deterministic event start inside [lo, hi - length].
std::size_t place(std::mt19937& rng, std::size_t lo, std::size_t hi, std::size_t length) {
    std::uniform_int_distribution<std::size_t> dist(lo, hi - length);
    return dist(rng);
}

}  // namespace

RunConfig injection_suite_config() {
    RunConfig config;
    config.window_length = 15;
    config.percentile = 97.0;
    config.anomaly_free_end = 1000;
    config.offline_end = 3600;
    return config;
}

std::vector<MetricSeries> injection_suite() {
    const std::size_t length = 5000;
    std::vector<MetricSeries> curves;
    for (std::size_t i = 0; i < 10; ++i) {
        const double amplitude = 1.0 + 0.15 * static_cast<double>(i % 4);
        const double period = 85.0 + 7.0 * static_cast<double>(i);
        auto values = base_signal(kind_for(i), length, period, amplitude,
                                  0.01 * amplitude, 1000 + static_cast<std::uint32_t>(i));
        std::vector<std::uint8_t> mask(length, 0);
        std::mt19937 rng(7000 + static_cast<std::uint32_t>(i));

        const bool flip = (i % 2) == 1;
        // Offline segment [1000, 3600): one event per third of the segment.
        inject(values, mask,
               InjectionEvent{place(rng, 1100, 1900, 20), 20,
                              flip ? AnomalyKind::bump_down : AnomalyKind::bump_up,
                              2.5 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 1950, 2750, 13), 13, AnomalyKind::pulse,
                              3.0 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 2800, 3550, 16), 16, AnomalyKind::oscillation,
                              1.8 * amplitude});
        // Online segment [3600, 5000): same families (in-distribution).
        inject(values, mask,
               InjectionEvent{place(rng, 3700, 4300, 18), 18,
                              flip ? AnomalyKind::bump_up : AnomalyKind::bump_down,
                              2.5 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 4350, 4920, 13), 13, AnomalyKind::pulse,
                              3.0 * amplitude});

        curves.push_back(labeled_series("curve_" + std::to_string(i), std::move(values),
                                        std::move(mask)));
    }
    return curves;
}

RunConfig drift_suite_config(bool adaptive) {
    RunConfig config;
    config.window_length = 15;
    config.percentile = 94.0;
    config.anomaly_free_end = 1000;
    config.offline_end = 3800;
    config.adaptive = adaptive;
    return config;
}

std::vector<MetricSeries> drift_suite() {
    const std::size_t length = 5000;
    std::vector<MetricSeries> curves;
    for (std::size_t i = 0; i < 8; ++i) {
        const double amplitude = 1.0 + 0.1 * static_cast<double>(i % 3);
        const double period = 90.0 + 8.0 * static_cast<double>(i);
        auto values = base_signal(i % 2 == 0 ? BaseKind::sine : BaseKind::triangle, length,
                                  period, amplitude, 0.01 * amplitude,
                                  3000 + static_cast<std::uint32_t>(i));
        std::vector<std::uint8_t> mask(length, 0);
        std::mt19937 rng(9000 + static_cast<std::uint32_t>(i));

        // Offline [1000, 3800): repeated bumps only, so the offline stage
        // learns one fat anomalous pattern family.
        inject(values, mask,
               InjectionEvent{place(rng, 1100, 1750, 20), 20, AnomalyKind::bump_up,
                              2.8 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 1800, 2450, 20), 20, AnomalyKind::bump_up,
                              2.8 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 2500, 3100, 20), 20, AnomalyKind::bump_up,
                              2.8 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 3150, 3750, 20), 20, AnomalyKind::bump_up,
                              2.8 * amplitude});
        // Online [3800, 5000): one in-distribution bump plus a family that
        // never occurred offline.
        inject(values, mask,
               InjectionEvent{place(rng, 3850, 4250, 20), 20, AnomalyKind::bump_up,
                              2.8 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 4300, 4650, 14), 14, AnomalyKind::oscillation,
                              1.6 * amplitude});
        inject(values, mask,
               InjectionEvent{place(rng, 4700, 4960, 14), 14, AnomalyKind::oscillation,
                              1.6 * amplitude});

        curves.push_back(labeled_series("drift_" + std::to_string(i), std::move(values),
                                        std::move(mask)));
    }
    return curves;
}

std::vector<MetricSeries> anomaly_free_set(std::size_t count, std::size_t length) {
    std::vector<MetricSeries> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::string name = "clean_" + std::to_string(i);
        if (i % 7 == 5) {
            out.emplace_back(name, std::vector<double>(length, 3.5));  // constant
            continue;
        }
        if (i % 7 == 6) {
            out.push_back(random_walk(name, length, 500 + static_cast<std::uint32_t>(i)));
            continue;
        }
        const double period = 40.0 + 11.0 * static_cast<double>(i % 5);
        out.emplace_back(name, base_signal(kind_for(i), length, period,
                                           1.0 + 0.2 * static_cast<double>(i % 3),
                                           i % 2 == 0 ? 0.01 : 0.02,
                                           200 + static_cast<std::uint32_t>(i)));
    }
    return out;
}

MetricSeries random_walk(const std::string& name, std::size_t length, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<double> values(length);
    double v = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        v += step(rng);
        values[i] = v;
    }
    return MetricSeries(name, std::move(values));
}

}  // namespace anomatch::testsupport
