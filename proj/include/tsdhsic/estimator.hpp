#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tsdhsic/kernel.hpp"
#include "tsdhsic/panel.hpp"

namespace tsdhsic {

/// Value of the joint-independence statistic together with the shape it was
/// computed from. `sample_count` is T in single-realization mode and n in
/// multi-realization mode. `small_sample_warning` is set when
/// 2 <= sample_count < 2d: the statistic is well defined but the sample is
/// too small for the usual asymptotics, so resampling calibration is the only
/// meaningful reading.
struct DhsicStatistic {
    double value = 0.0;
    std::size_t variable_count = 0;
    std::size_t sample_count = 0;
    bool small_sample_warning = false;
};

/// dHSIC V-statistic from d Gram matrices sharing size n, in O(d n^2) time:
///   term1 = mean over (a,b) of prod_j K_j[a][b]
///   term2 = prod_j (grand mean of K_j)
///   term3 = 2 * mean over a of prod_j (row-a mean of K_j)
/// value = term1 + term2 - term3. Grand means use compensated summation.
///
/// Throws TooFewVariables (d < 2), SizeMismatch, TooFewSamples (n < 2).
[[nodiscard]] DhsicStatistic dhsic_from_grams(std::span<const GramMatrix> grams);
[[nodiscard]] DhsicStatistic dhsic_from_grams(std::span<const GramMatrix* const> grams);

/// Literal evaluation of the three V-statistic sums over all index tuples
/// (n^2, n^(2d) and n^(d+1) terms). Exponentially slow; a cross-check oracle,
/// guarded by InstanceTooLarge when n^(2d) > 1e7.
[[nodiscard]] double dhsic_naive(std::span<const GramMatrix> grams);

/// Per-variable Gram matrices for a panel: T x T over scalar time points when
/// n = 1, n x n over whole-series vectors when n >= 2.
[[nodiscard]] std::vector<GramMatrix> panel_grams(const TimeSeriesPanel& panel,
                                                  const KernelConfig& config, int threads = 0);

/// Statistic for one realization of d equal-length series (time points as
/// samples). Throws ModeMismatch if n > 1 or lengths differ.
[[nodiscard]] DhsicStatistic dhsic_single_realization(const TimeSeriesPanel& panel,
                                                      const KernelConfig& config);

/// Statistic for n iid realizations (whole series as vector samples; lengths
/// may differ across variables). Throws ModeMismatch if n = 1.
[[nodiscard]] DhsicStatistic dhsic_multi_realization(const TimeSeriesPanel& panel,
                                                     const KernelConfig& config);

/// Batched evaluation of the statistic under per-variable re-indexings of
/// fixed Gram matrices. Cyclic shifts re-index as
/// K'[a][b] = K[(a+c) mod n][(b+c) mod n], permutations as K[p(a)][p(b)];
/// both leave the grand mean and the multiset of row means unchanged, so only
/// the joint product term is recomputed per draw.
///
/// The shift path stores each matrix diagonal-major with a doubled index
/// range, turning every inner sum into a contiguous walk; draws then share
/// those rows across a batch. Results are bit-identical for any thread count
/// (fixed-size reduction chunks, merged in index order).
class DhsicEvaluator {
public:
    explicit DhsicEvaluator(std::span<const GramMatrix> grams);
    explicit DhsicEvaluator(std::vector<const GramMatrix*> grams);

    [[nodiscard]] std::size_t sample_count() const { return n_; }
    [[nodiscard]] std::size_t variable_count() const { return grams_.size(); }

    /// Statistics for a batch of shift draws; offsets[s][j] in [0, n).
    [[nodiscard]] std::vector<double> shift_statistics(
        std::span<const std::vector<std::uint32_t>> offsets, int threads = 0) const;

    /// Statistics for a batch of permutation draws; perms[s][j] is a
    /// permutation of {0..n-1} (empty = identity).
    [[nodiscard]] std::vector<double> permutation_statistics(
        std::span<const std::vector<std::vector<std::uint32_t>>> perms, int threads = 0) const;

    /// Observed statistic through the same code path as the corresponding
    /// null draws (all-zero shifts / identity permutations).
    [[nodiscard]] double observed_shift() const;
    [[nodiscard]] double observed_permutation() const;

private:
    void ensure_diagonal_layout() const;

    std::vector<const GramMatrix*> grams_;
    std::size_t n_ = 0;
    std::vector<std::vector<double>> row_means_;  // per variable, length 2n (duplicated)
    double grand_mean_product_ = 1.0;

    // Diagonal-major copies for the shift path, built on first use:
    // diag_[j][delta * 2n + r] = K_j[r mod n][(r + delta) mod n].
    mutable std::vector<std::vector<double>> diag_;
};

}  // namespace tsdhsic
