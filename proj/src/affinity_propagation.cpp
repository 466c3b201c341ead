#include "anomatch/affinity_propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace anomatch {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

}  // namespace

ClusteringResult affinity_propagation(const std::vector<std::vector<double>>& points,
                                      const ApOptions& options) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw std::invalid_argument("affinity_propagation: empty input");
    }
    const std::size_t dim = points[0].size();
    for (const auto& pt : points) {
        if (pt.size() != dim) {
            throw std::invalid_argument("affinity_propagation: point dimensions differ");
        }
    }
    if (options.damping < 0.5 || options.damping >= 1.0) {
        throw std::invalid_argument("affinity_propagation: damping must be in [0.5, 1)");
    }
    if (n == 1) {
        return ClusteringResult{{0}, {0}, true};
    }

    // Similarity matrix, row-major.
    std::vector<double> sim(n * n, 0.0);
    std::vector<double> off_diagonal;
    off_diagonal.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            const double s = -squared_distance(points[i], points[k]);
            sim[i * n + k] = s;
            off_diagonal.push_back(s);
        }
    }
    double preference;
    if (options.preference) {
        preference = *options.preference;
    } else {
        std::nth_element(off_diagonal.begin(), off_diagonal.begin() + off_diagonal.size() / 2,
                         off_diagonal.end());
        const double upper = off_diagonal[off_diagonal.size() / 2];
        if (off_diagonal.size() % 2 == 0) {
            const double lower =
                *std::max_element(off_diagonal.begin(), off_diagonal.begin() + off_diagonal.size() / 2);
            preference = (lower + upper) / 2.0;
        } else {
            preference = upper;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        sim[k * n + k] = preference;
    }

    // Deterministic index-derived jitter, far below the similarity scale.
    // It prefers low indices, which fixes the exemplar choice between
    // otherwise indistinguishable points.
    const auto [lo_it, hi_it] = std::minmax_element(sim.begin(), sim.end());
    double range = *hi_it - *lo_it;
    if (range == 0.0) range = 1.0;
    const double eps = 1e-12 * range;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            sim[i * n + k] -= eps * static_cast<double>(i * n + k) / static_cast<double>(n * n);
        }
    }

    std::vector<double> resp(n * n, 0.0);
    std::vector<double> avail(n * n, 0.0);
    const double lambda = options.damping;

    std::vector<std::uint8_t> exemplar_flags(n, 0);
    std::vector<std::uint8_t> prev_flags(n, 0);
    std::size_t stable_iterations = 0;
    bool converged = false;

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        // Responsibilities.
        for (std::size_t i = 0; i < n; ++i) {
            double max1 = -std::numeric_limits<double>::infinity();
            double max2 = -std::numeric_limits<double>::infinity();
            std::size_t arg1 = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const double v = avail[i * n + k] + sim[i * n + k];
                if (v > max1) {
                    max2 = max1;
                    max1 = v;
                    arg1 = k;
                } else if (v > max2) {
                    max2 = v;
                }
            }
            for (std::size_t k = 0; k < n; ++k) {
                const double cutoff = (k == arg1) ? max2 : max1;
                resp[i * n + k] =
                    lambda * resp[i * n + k] + (1.0 - lambda) * (sim[i * n + k] - cutoff);
            }
        }
        // Availabilities.
        for (std::size_t k = 0; k < n; ++k) {
            double positive_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i != k) positive_sum += std::max(0.0, resp[i * n + k]);
            }
            const double self_resp = resp[k * n + k];
            for (std::size_t i = 0; i < n; ++i) {
                double a;
                if (i == k) {
                    a = positive_sum;
                } else {
                    a = std::min(0.0, self_resp + positive_sum - std::max(0.0, resp[i * n + k]));
                }
                avail[i * n + k] = lambda * avail[i * n + k] + (1.0 - lambda) * a;
            }
        }
        // Convergence: exemplar set unchanged for convergence_window iterations.
        for (std::size_t k = 0; k < n; ++k) {
            exemplar_flags[k] = (resp[k * n + k] + avail[k * n + k] > 0.0) ? 1 : 0;
        }
        if (iter > 0 && exemplar_flags == prev_flags) {
            if (++stable_iterations >= options.convergence_window) {
                converged = true;
                break;
            }
        } else {
            stable_iterations = 0;
        }
        prev_flags = exemplar_flags;
    }

    ClusteringResult result;
    result.converged = converged;
    for (std::size_t k = 0; k < n; ++k) {
        if (exemplar_flags[k]) result.exemplars.push_back(k);
    }
    if (result.exemplars.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const double v = resp[k * n + k] + avail[k * n + k];
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        result.exemplars.push_back(arg);
    }

    result.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::binary_search(result.exemplars.begin(), result.exemplars.end(), i)) {
            result.assignment[i] = i;
            continue;
        }
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = result.exemplars.front();
        for (std::size_t k : result.exemplars) {
            const double v = sim[i * n + k];  // jittered, so ties pick the lowest k
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        result.assignment[i] = arg;
    }
    return result;
}

}  // namespace anomatch
