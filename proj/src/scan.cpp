#include "tsdhsic/scan.hpp"

#include <algorithm>

#include "tsdhsic/error.hpp"
#include "tsdhsic/estimator.hpp"
#include "tsdhsic/parallel.hpp"
#include "tsdhsic/rng.hpp"

namespace tsdhsic {

namespace {

constexpr std::uint64_t kScanSalt = 0x7363616e2d736565ULL;

/// All size-m subsets of {0..d-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets_of_order(std::size_t d, std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current(m);
    for (std::size_t i = 0; i < m; ++i) current[i] = i;
    for (;;) {
        out.push_back(current);
        std::size_t i = m;
        while (i > 0 && current[i - 1] == d - m + i - 1) --i;
        if (i == 0) break;
        ++current[i - 1];
        for (std::size_t k = i; k < m; ++k) current[k] = current[k - 1] + 1;
    }
    return out;
}

bool is_proper_superset(const std::vector<std::size_t>& candidate,
                        const std::vector<std::size_t>& subset) {
    if (subset.size() >= candidate.size()) return false;
    return std::includes(candidate.begin(), candidate.end(), subset.begin(), subset.end());
}

double binomial(std::size_t n, std::size_t k) {
    double value = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        value *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return value;
}

}  // namespace

DependenceHypergraph scan_higher_order(const TimeSeriesPanel& panel,
                                       const KernelConfig& kernel_config,
                                       const ScanConfig& config) {
    panel.validate();
    config.test.validate();
    const std::size_t d = panel.variable_count();
    const std::size_t max_order = config.max_order == 0 ? d : config.max_order;
    if (max_order < 2 || max_order > d) {
        throw Error(ErrorCode::BadOrder,
                    "max_order " + std::to_string(max_order) + " outside [2, " +
                        std::to_string(d) + "]");
    }

    ResamplingMethod method = config.test.method;
    if (method == ResamplingMethod::auto_select) {
        method = panel.realizations() == 1 ? ResamplingMethod::shift
                                           : ResamplingMethod::permute;
    }

    // Kernels depend only on a variable's own samples, so they are shared
    // across every subset test.
    const auto grams = panel_grams(panel, kernel_config, config.test.threads);

    DependenceHypergraph graph;
    for (const auto& var : panel.variables) graph.nodes.push_back(var.name);

    auto names_of = [&](const std::vector<std::size_t>& subset) {
        std::vector<std::string> names;
        names.reserve(subset.size());
        for (std::size_t idx : subset) names.push_back(panel.variables[idx].name);
        return names;
    };

    std::vector<std::vector<std::size_t>> rejected_subsets;
    std::size_t subset_index = 0;  // global lexicographic index across orders

    for (std::size_t order = 2; order <= max_order; ++order) {
        const auto candidates = subsets_of_order(d, order);
        const double order_alpha =
            config.bonferroni ? config.test.alpha / binomial(d, order) : config.test.alpha;

        struct Job {
            std::vector<std::size_t> subset;
            std::uint64_t seed;
        };
        std::vector<Job> jobs;
        for (const auto& subset : candidates) {
            const std::uint64_t seed = derive_seed(config.test.seed, kScanSalt, subset_index);
            ++subset_index;

            const auto* blocker = [&]() -> const std::vector<std::size_t>* {
                for (const auto& r : rejected_subsets) {
                    if (is_proper_superset(subset, r)) return &r;
                }
                return nullptr;
            }();
            if (blocker != nullptr) {
                graph.skipped.push_back({names_of(subset), order, names_of(*blocker)});
            } else {
                jobs.push_back({subset, seed});
            }
        }

        // Subsets within one order are independent; orders stay sequential
        // because skipping needs the previous order's rejections.
        std::vector<TestResult> results(jobs.size());
        parallel_for(jobs.size(), config.test.threads, [&](std::size_t i) {
            std::vector<const GramMatrix*> subset_grams;
            subset_grams.reserve(jobs[i].subset.size());
            for (std::size_t idx : jobs[i].subset) subset_grams.push_back(&grams[idx]);
            TestConfig test_config = config.test;
            test_config.seed = jobs[i].seed;
            test_config.alpha = order_alpha;
            test_config.threads = 1;
            results[i] = joint_independence_test_on_grams(std::move(subset_grams), method,
                                                          test_config);
        });

        for (std::size_t i = 0; i < jobs.size(); ++i) {
            const auto& subset = jobs[i].subset;
            const auto& result = results[i];
            graph.tested.push_back({names_of(subset), order, result.p_value, result.reject});
            if (result.reject) {
                graph.edges.push_back({names_of(subset), order, result.p_value});
                rejected_subsets.push_back(subset);
            }
        }
    }
    return graph;
}

std::string hypergraph_edge_list(const DependenceHypergraph& graph) {
    std::string out;
    for (const auto& edge : graph.edges) {
        for (std::size_t i = 0; i < edge.variables.size(); ++i) {
            if (i > 0) out += ',';
            out += edge.variables[i];
        }
        out += '\n';
    }
    return out;
}

}  // namespace tsdhsic
