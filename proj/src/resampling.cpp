#include "tsdhsic/resampling.hpp"

#include <algorithm>
#include <cmath>

#include "tsdhsic/error.hpp"
#include "tsdhsic/rng.hpp"

namespace tsdhsic {

namespace {

// Stream labels separating shift-offset draws from permutation draws.
constexpr std::uint64_t kShiftSalt = 0x73686966742d6e75ULL;
constexpr std::uint64_t kPermSalt = 0x7065726d2d6e756cULL;

std::vector<std::vector<std::uint32_t>> draw_shift_offsets(std::size_t num_null, std::size_t d,
                                                           std::size_t n,
                                                           const TestConfig& config) {
    std::vector<std::vector<std::uint32_t>> offsets(num_null,
                                                    std::vector<std::uint32_t>(d, 0));
    for (std::size_t s = 0; s < num_null; ++s) {
        for (std::size_t j = config.fix_first ? 1 : 0; j < d; ++j) {
            auto rng = derive_stream(config.seed, kShiftSalt, s, j);
            offsets[s][j] = 1 + static_cast<std::uint32_t>(rng.next_below(n - 1));
        }
    }
    return offsets;
}

std::vector<std::vector<std::vector<std::uint32_t>>> draw_permutations(
    std::size_t num_null, std::size_t d, std::size_t n, const TestConfig& config) {
    std::vector<std::vector<std::vector<std::uint32_t>>> perms(
        num_null, std::vector<std::vector<std::uint32_t>>(d));
    for (std::size_t s = 0; s < num_null; ++s) {
        for (std::size_t j = config.fix_first ? 1 : 0; j < d; ++j) {
            auto rng = derive_stream(config.seed, kPermSalt, s, j);
            perms[s][j] = random_permutation(n, rng);
        }
    }
    return perms;
}

NullDistribution shift_null_on_evaluator(const DhsicEvaluator& evaluator,
                                         const TestConfig& config) {
    const auto offsets = draw_shift_offsets(config.num_null, evaluator.variable_count(),
                                            evaluator.sample_count(), config);
    NullDistribution null;
    null.samples = evaluator.shift_statistics(offsets, config.threads);
    null.method = ResamplingMethod::shift;
    null.seed = config.seed;
    std::sort(null.samples.begin(), null.samples.end());
    return null;
}

NullDistribution permutation_null_on_evaluator(const DhsicEvaluator& evaluator,
                                               const TestConfig& config) {
    const auto perms = draw_permutations(config.num_null, evaluator.variable_count(),
                                         evaluator.sample_count(), config);
    NullDistribution null;
    null.samples = evaluator.permutation_statistics(perms, config.threads);
    null.method = ResamplingMethod::permute;
    null.seed = config.seed;
    std::sort(null.samples.begin(), null.samples.end());
    return null;
}

void check_shift_preconditions(std::size_t n_realizations, std::size_t length) {
    if (n_realizations != 1) {
        throw Error(ErrorCode::ModeMismatch, "shifting requires a single-realization panel");
    }
    if (length < 4) {
        throw Error(ErrorCode::DegenerateLength, "shifting needs at least 4 time points");
    }
}

}  // namespace

const char* method_name(ResamplingMethod method) noexcept {
    switch (method) {
        case ResamplingMethod::shift: return "shift";
        case ResamplingMethod::permute: return "permute";
        case ResamplingMethod::auto_select: return "auto";
    }
    return "unknown";
}

void TestConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    }
    if (num_null < 1) {
        throw Error(ErrorCode::InvalidConfig, "num_null must be at least 1");
    }
}

NullDistribution shift_null(const TimeSeriesPanel& panel, const KernelConfig& kernel_config,
                            const TestConfig& config) {
    config.validate();
    panel.validate();
    check_shift_preconditions(panel.realizations(), panel.variables.front().length);
    const auto grams = panel_grams(panel, kernel_config, config.threads);
    DhsicEvaluator evaluator{std::span<const GramMatrix>(grams)};
    return shift_null_on_evaluator(evaluator, config);
}

NullDistribution permutation_null(const TimeSeriesPanel& panel,
                                  const KernelConfig& kernel_config, const TestConfig& config) {
    config.validate();
    panel.validate();
    if (panel.realizations() < 2) {
        throw Error(ErrorCode::ModeMismatch, "permutation requires n >= 2 realizations");
    }
    const auto grams = panel_grams(panel, kernel_config, config.threads);
    DhsicEvaluator evaluator{std::span<const GramMatrix>(grams)};
    return permutation_null_on_evaluator(evaluator, config);
}

double empirical_threshold(const NullDistribution& null, double alpha) {
    if (null.samples.empty()) throw Error(ErrorCode::EmptyNull, "null distribution is empty");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
    }
    const std::size_t count = null.samples.size();
    const double position = (1.0 - alpha) * static_cast<double>(count);
    std::size_t rank = static_cast<std::size_t>(std::ceil(position));
    if (rank < 1) rank = 1;
    if (rank > count) rank = count;
    return null.samples[rank - 1];
}

TestResult joint_independence_test_on_grams(std::vector<const GramMatrix*> grams,
                                            ResamplingMethod method, const TestConfig& config) {
    config.validate();
    if (method == ResamplingMethod::auto_select) {
        throw Error(ErrorCode::InvalidConfig, "method must be resolved before the gram-level call");
    }

    DhsicEvaluator evaluator{grams};
    if (method == ResamplingMethod::shift && evaluator.sample_count() < 4) {
        throw Error(ErrorCode::DegenerateLength, "shifting needs at least 4 time points");
    }

    TestResult result;
    result.config = config;
    result.config.method = method;
    result.variable_count = evaluator.variable_count();
    result.sample_count = evaluator.sample_count();
    for (const auto* g : grams) result.bandwidths.push_back(g->bandwidth);

    if (method == ResamplingMethod::shift) {
        result.statistic = evaluator.observed_shift();
        result.null = shift_null_on_evaluator(evaluator, config);
    } else {
        result.statistic = evaluator.observed_permutation();
        result.null = permutation_null_on_evaluator(evaluator, config);
    }

    result.threshold = empirical_threshold(result.null, config.alpha);
    std::size_t at_least = 0;
    for (double v : result.null.samples) {
        if (v >= result.statistic) ++at_least;
    }
    result.p_value = static_cast<double>(1 + at_least) /
                     static_cast<double>(config.num_null + 1);
    result.reject = result.statistic > result.threshold;

    if (result.sample_count < 2 * result.variable_count) {
        result.warnings.push_back(
            "sample count " + std::to_string(result.sample_count) + " is below 2d = " +
            std::to_string(2 * result.variable_count) +
            "; rely on the resampled calibration only");
    }
    return result;
}

TestResult joint_independence_test(const TimeSeriesPanel& panel,
                                   const KernelConfig& kernel_config,
                                   const TestConfig& config) {
    config.validate();
    panel.validate();

    ResamplingMethod method = config.method;
    const std::size_t n = panel.realizations();
    if (method == ResamplingMethod::auto_select) {
        method = n == 1 ? ResamplingMethod::shift : ResamplingMethod::permute;
    }
    if (method == ResamplingMethod::shift) {
        check_shift_preconditions(n, panel.variables.front().length);
    } else if (n < 2) {
        throw Error(ErrorCode::ModeMismatch, "permutation requires n >= 2 realizations");
    }

    const auto grams = panel_grams(panel, kernel_config, config.threads);
    std::vector<const GramMatrix*> ptrs;
    ptrs.reserve(grams.size());
    for (const auto& g : grams) ptrs.push_back(&g);
    return joint_independence_test_on_grams(std::move(ptrs), method, config);
}

}  // namespace tsdhsic
