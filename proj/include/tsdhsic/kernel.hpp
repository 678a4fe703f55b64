#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsdhsic {

enum class KernelFamily { gaussian };

enum class BandwidthRule { median_heuristic, fixed };

struct KernelConfig {
    KernelFamily family = KernelFamily::gaussian;
    BandwidthRule bandwidth_rule = BandwidthRule::median_heuristic;
    double fixed_sigma = 1.0;  // used when bandwidth_rule == fixed; must be > 0

    [[nodiscard]] static KernelConfig median() { return {}; }
    [[nodiscard]] static KernelConfig fixed(double sigma) {
        return {KernelFamily::gaussian, BandwidthRule::fixed, sigma};
    }
};

/// `count` samples of dimension `dim`, stored contiguously row-major. Both
/// sample semantics reduce to this view: time points of one series are
/// (count = T, dim = 1), whole realizations are (count = n, dim = T).
struct SampleView {
    const double* data = nullptr;
    std::size_t count = 0;
    std::size_t dim = 0;

    [[nodiscard]] std::span<const double> sample(std::size_t i) const {
        return {data + i * dim, dim};
    }
};

/// Symmetric kernel matrix over a sample set. For the Gaussian kernel the
/// diagonal is exactly 1 and all entries lie in (0, 1].
struct GramMatrix {
    std::size_t size = 0;
    std::vector<double> values;  // size * size, row-major
    double bandwidth = 0.0;      // resolved sigma used to build the matrix

    [[nodiscard]] double at(std::size_t a, std::size_t b) const {
        return values[a * size + b];
    }
    [[nodiscard]] std::span<const double> row(std::size_t a) const {
        return {values.data() + a * size, size};
    }
};

/// Median of the Euclidean distances over all unordered distinct sample
/// pairs, excluding zero distances. Deterministic for fixed input.
///
/// Throws EmptyInput (fewer than 2 samples) and AllSamplesIdentical (every
/// pairwise distance is zero).
[[nodiscard]] double median_heuristic_bandwidth(const SampleView& samples);
[[nodiscard]] double median_heuristic_bandwidth(const std::vector<std::vector<double>>& samples);

/// Gram matrix with entries exp(-||s_a - s_b||^2 / (2 sigma^2)). Row
/// construction may run on several threads; entries are pure functions of
/// their indices, so the result is identical for any thread count.
[[nodiscard]] GramMatrix gram_matrix(const SampleView& samples, const KernelConfig& config,
                                     int threads = 0);
[[nodiscard]] GramMatrix gram_matrix(const std::vector<std::vector<double>>& samples,
                                     const KernelConfig& config, int threads = 0);

}  // namespace tsdhsic
