#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tsdhsic/estimator.hpp"
#include "tsdhsic/kernel.hpp"
#include "tsdhsic/panel.hpp"

namespace tsdhsic {

enum class ResamplingMethod { shift, permute, auto_select };

[[nodiscard]] const char* method_name(ResamplingMethod method) noexcept;

struct TestConfig {
    double alpha = 0.05;
    ResamplingMethod method = ResamplingMethod::auto_select;
    std::size_t num_null = 1000;  // S (shiftings) or P (permutations)
    std::uint64_t seed = 0;
    bool fix_first = true;  // keep variable 1 unshifted/unpermuted
    int threads = 0;        // worker cap; 0 = hardware concurrency

    void validate() const;
};

/// Sorted (ascending) resampled statistics approximating the null.
struct NullDistribution {
    std::vector<double> samples;
    ResamplingMethod method = ResamplingMethod::shift;
    std::uint64_t seed = 0;
};

struct TestResult {
    double statistic = 0.0;
    double threshold = 0.0;  // empirical c_alpha
    double p_value = 1.0;    // add-one permutation p-value, in (0, 1]
    bool reject = false;     // statistic > threshold
    NullDistribution null;
    // Echo of the resolved run configuration.
    TestConfig config;                     // method resolved (never auto_select)
    std::vector<double> bandwidths;        // per variable, as used
    std::size_t sample_count = 0;          // T (shift) or n (permute)
    std::size_t variable_count = 0;
    std::vector<std::string> warnings;
};

/// Null distribution by cyclic shifting for a single-realization panel: per
/// draw, each non-fixed variable is rotated by an independent offset uniform
/// on {1, ..., T-1} and the statistic is recomputed by re-indexing the
/// observed Gram matrices. Offset streams are derived from
/// (seed, draw index, variable index), so results do not depend on execution
/// order or thread count.
///
/// Throws ModeMismatch (n > 1), DegenerateLength (T < 4).
[[nodiscard]] NullDistribution shift_null(const TimeSeriesPanel& panel,
                                          const KernelConfig& kernel_config,
                                          const TestConfig& config);

/// Null distribution by cross-realization permutation: per draw, the
/// realization order of each non-fixed variable is independently uniformly
/// permuted. Throws ModeMismatch if n = 1.
[[nodiscard]] NullDistribution permutation_null(const TimeSeriesPanel& panel,
                                                const KernelConfig& kernel_config,
                                                const TestConfig& config);

/// Order statistic at rank ceil((1 - alpha) * num_null), 1-based over the
/// ascending samples. Throws EmptyNull.
[[nodiscard]] double empirical_threshold(const NullDistribution& null, double alpha);

/// Full test: observed statistic, null distribution (method resolved from
/// the panel shape when auto), threshold, add-one p-value and reject flag.
/// Deterministic given (panel, configs, seed).
[[nodiscard]] TestResult joint_independence_test(const TimeSeriesPanel& panel,
                                                 const KernelConfig& kernel_config,
                                                 const TestConfig& config);

/// Same test on precomputed per-variable Gram matrices (shift semantics need
/// time-indexed T x T matrices, permute semantics n x n ones). The matrices
/// must outlive the call. Used by the scanner and the power harness to reuse
/// kernels across repeated tests.
[[nodiscard]] TestResult joint_independence_test_on_grams(
    std::vector<const GramMatrix*> grams, ResamplingMethod method, const TestConfig& config);

}  // namespace tsdhsic
