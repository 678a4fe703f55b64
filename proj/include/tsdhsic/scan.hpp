#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsdhsic/kernel.hpp"
#include "tsdhsic/panel.hpp"
#include "tsdhsic/resampling.hpp"

namespace tsdhsic {

/// Minimal variable subsets whose joint-independence null was rejected,
/// plus a full audit trail of every subset visited. Hyperedges are minimal
/// by construction: once a subset is rejected, all of its supersets are
/// skipped, so no edge contains another.
struct DependenceHypergraph {
    struct Edge {
        std::vector<std::string> variables;  // sorted by panel order
        std::size_t order = 0;
        double p_value = 1.0;
    };
    struct TestedSubset {
        std::vector<std::string> variables;
        std::size_t order = 0;
        double p_value = 1.0;
        bool rejected = false;
    };
    struct SkippedSubset {
        std::vector<std::string> variables;
        std::size_t order = 0;
        std::vector<std::string> because_of;  // the rejected proper subset
    };

    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::vector<TestedSubset> tested;
    std::vector<SkippedSubset> skipped;
};

struct ScanConfig {
    TestConfig test;            // seed here is the master seed
    std::size_t max_order = 0;  // 0 = scan all the way to order d
    bool bonferroni = false;    // divide alpha by the per-order test count
};

/// Tests every variable subset of size 2..max_order in increasing order,
/// skipping any subset that contains an already-rejected subset. Subsets are
/// enumerated lexicographically (by variable position); each subset's test
/// seed derives from (master seed, global subset index), so raising max_order
/// never perturbs earlier results.
///
/// Throws BadOrder when max_order is outside [2, d].
[[nodiscard]] DependenceHypergraph scan_higher_order(const TimeSeriesPanel& panel,
                                                     const KernelConfig& kernel_config,
                                                     const ScanConfig& config);

/// Plain-text edge list: one hyperedge per line, variables comma-separated.
[[nodiscard]] std::string hypergraph_edge_list(const DependenceHypergraph& graph);

}  // namespace tsdhsic
