#include "tsdhsic/estimator.hpp"

#include <cmath>
#include <mutex>

#include "tsdhsic/error.hpp"
#include "tsdhsic/parallel.hpp"

namespace tsdhsic {

namespace {

struct KahanAccumulator {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void check_gram_set(std::span<const GramMatrix* const> grams) {
    if (grams.size() < 2) {
        throw Error(ErrorCode::TooFewVariables, "dHSIC needs at least 2 variables");
    }
    const std::size_t n = grams.front()->size;
    for (const auto* g : grams) {
        if (g->size != n) {
            throw Error(ErrorCode::SizeMismatch, "Gram matrices differ in size");
        }
    }
    if (n < 2) {
        throw Error(ErrorCode::TooFewSamples, "dHSIC needs at least 2 samples");
    }
}

/// Grand mean (compensated over row sums) and per-row means of one matrix.
void row_and_grand_means(const GramMatrix& gram, std::vector<double>& row_means,
                         double& grand_mean) {
    const std::size_t n = gram.size;
    row_means.resize(n);
    KahanAccumulator total;
    for (std::size_t a = 0; a < n; ++a) {
        const double* row = gram.values.data() + a * n;
        double sum = 0.0;
        for (std::size_t b = 0; b < n; ++b) sum += row[b];
        row_means[a] = sum / static_cast<double>(n);
        total.add(sum);
    }
    grand_mean = total.sum / (static_cast<double>(n) * static_cast<double>(n));
}

DhsicStatistic dhsic_from_gram_ptrs(std::span<const GramMatrix* const> grams) {
    check_gram_set(grams);
    const std::size_t d = grams.size();
    const std::size_t n = grams.front()->size;

    double term2 = 1.0;
    std::vector<std::vector<double>> row_means(d);
    for (std::size_t j = 0; j < d; ++j) {
        double grand = 0.0;
        row_and_grand_means(*grams[j], row_means[j], grand);
        term2 *= grand;
    }

    KahanAccumulator term1_rows;
    KahanAccumulator term3_rows;
    for (std::size_t a = 0; a < n; ++a) {
        double row_sum = 0.0;
        const double* row0 = grams[0]->values.data() + a * n;
        if (d == 2) {
            const double* row1 = grams[1]->values.data() + a * n;
            for (std::size_t b = 0; b < n; ++b) row_sum += row0[b] * row1[b];
        } else if (d == 3) {
            const double* row1 = grams[1]->values.data() + a * n;
            const double* row2 = grams[2]->values.data() + a * n;
            for (std::size_t b = 0; b < n; ++b) row_sum += row0[b] * row1[b] * row2[b];
        } else {
            for (std::size_t b = 0; b < n; ++b) {
                double prod = row0[b];
                for (std::size_t j = 1; j < d; ++j) prod *= grams[j]->at(a, b);
                row_sum += prod;
            }
        }
        term1_rows.add(row_sum);

        double mean_prod = 1.0;
        for (std::size_t j = 0; j < d; ++j) mean_prod *= row_means[j][a];
        term3_rows.add(mean_prod);
    }

    const double nn = static_cast<double>(n);
    const double term1 = term1_rows.sum / (nn * nn);
    const double term3 = 2.0 * term3_rows.sum / nn;

    DhsicStatistic stat;
    stat.value = term1 + term2 - term3;
    stat.variable_count = d;
    stat.sample_count = n;
    stat.small_sample_warning = n < 2 * d;
    return stat;
}

}  // namespace

DhsicStatistic dhsic_from_grams(std::span<const GramMatrix> grams) {
    std::vector<const GramMatrix*> ptrs;
    ptrs.reserve(grams.size());
    for (const auto& g : grams) ptrs.push_back(&g);
    return dhsic_from_gram_ptrs(ptrs);
}

DhsicStatistic dhsic_from_grams(std::span<const GramMatrix* const> grams) {
    return dhsic_from_gram_ptrs(grams);
}

double dhsic_naive(std::span<const GramMatrix> grams) {
    if (grams.size() < 2) {
        throw Error(ErrorCode::TooFewVariables, "dHSIC needs at least 2 variables");
    }
    const std::size_t d = grams.size();
    const std::size_t n = grams.front().size;
    for (const auto& g : grams) {
        if (g.size != n) throw Error(ErrorCode::SizeMismatch, "Gram matrices differ in size");
    }

    double tuple_count = 1.0;
    for (std::size_t q = 0; q < 2 * d; ++q) tuple_count *= static_cast<double>(n);
    if (tuple_count > 1e7) {
        throw Error(ErrorCode::InstanceTooLarge,
                    "n^(2d) exceeds the enumeration guard of 1e7");
    }

    const double nn = static_cast<double>(n);

    // First sum: over (t1, t2), product over j of K_j[t1][t2].
    double term1 = 0.0;
    for (std::size_t t1 = 0; t1 < n; ++t1) {
        for (std::size_t t2 = 0; t2 < n; ++t2) {
            double prod = 1.0;
            for (std::size_t j = 0; j < d; ++j) prod *= grams[j].at(t1, t2);
            term1 += prod;
        }
    }
    term1 /= std::pow(nn, 2.0);

    // Second sum: over 2d-tuples, product over j of K_j[t_{2j-1}][t_{2j}]
    // (odometer over the full index hypercube).
    double term2 = 0.0;
    {
        std::vector<std::size_t> idx(2 * d, 0);
        for (;;) {
            double prod = 1.0;
            for (std::size_t j = 0; j < d; ++j) prod *= grams[j].at(idx[2 * j], idx[2 * j + 1]);
            term2 += prod;
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        term2 /= std::pow(nn, 2.0 * static_cast<double>(d));
    }

    // Third sum: over (d+1)-tuples, product over j of K_j[t1][t_{j+1}].
    double term3 = 0.0;
    {
        std::vector<std::size_t> idx(d + 1, 0);
        for (;;) {
            double prod = 1.0;
            for (std::size_t j = 0; j < d; ++j) prod *= grams[j].at(idx[0], idx[j + 1]);
            term3 += prod;
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        term3 *= 2.0 / std::pow(nn, static_cast<double>(d) + 1.0);
    }

    return term1 + term2 - term3;
}

std::vector<GramMatrix> panel_grams(const TimeSeriesPanel& panel, const KernelConfig& config,
                                    int threads) {
    panel.validate();
    const std::size_t n = panel.realizations();
    std::vector<GramMatrix> grams;
    grams.reserve(panel.variables.size());
    for (const auto& var : panel.variables) {
        SampleView view;
        if (n == 1) {
            view = {var.values.data(), var.length, 1};
        } else {
            view = {var.values.data(), var.realizations, var.length};
        }
        grams.push_back(gram_matrix(view, config, threads));
    }
    return grams;
}

DhsicStatistic dhsic_single_realization(const TimeSeriesPanel& panel,
                                        const KernelConfig& config) {
    panel.validate();
    if (panel.realizations() != 1) {
        throw Error(ErrorCode::ModeMismatch,
                    "single-realization estimator called on a panel with n > 1");
    }
    const auto grams = panel_grams(panel, config);
    return dhsic_from_grams(grams);
}

DhsicStatistic dhsic_multi_realization(const TimeSeriesPanel& panel,
                                       const KernelConfig& config) {
    panel.validate();
    if (panel.realizations() < 2) {
        throw Error(ErrorCode::ModeMismatch,
                    "multi-realization estimator needs n >= 2 realizations");
    }
    const auto grams = panel_grams(panel, config);
    return dhsic_from_grams(grams);
}

// ---------------------------------------------------------------------------
// DhsicEvaluator
// ---------------------------------------------------------------------------

namespace {

// Fixed reduction granularity for the shift path; independent of the thread
// count so partial sums merge identically under any parallel schedule.
constexpr std::size_t kDeltaChunk = 16;

inline double contiguous_product_sum(const double* const* rows, std::size_t d, std::size_t n) {
    double sum = 0.0;
    switch (d) {
        case 2: {
            const double *p0 = rows[0], *p1 = rows[1];
            for (std::size_t a = 0; a < n; ++a) sum += p0[a] * p1[a];
            break;
        }
        case 3: {
            const double *p0 = rows[0], *p1 = rows[1], *p2 = rows[2];
            for (std::size_t a = 0; a < n; ++a) sum += p0[a] * p1[a] * p2[a];
            break;
        }
        case 4: {
            const double *p0 = rows[0], *p1 = rows[1], *p2 = rows[2], *p3 = rows[3];
            for (std::size_t a = 0; a < n; ++a) sum += p0[a] * p1[a] * p2[a] * p3[a];
            break;
        }
        default: {
            for (std::size_t a = 0; a < n; ++a) {
                double prod = rows[0][a];
                for (std::size_t j = 1; j < d; ++j) prod *= rows[j][a];
                sum += prod;
            }
        }
    }
    return sum;
}

}  // namespace

namespace {
std::vector<const GramMatrix*> gram_pointers(std::span<const GramMatrix> grams) {
    std::vector<const GramMatrix*> ptrs;
    ptrs.reserve(grams.size());
    for (const auto& g : grams) ptrs.push_back(&g);
    return ptrs;
}
}  // namespace

DhsicEvaluator::DhsicEvaluator(std::span<const GramMatrix> grams)
    : DhsicEvaluator(gram_pointers(grams)) {}

DhsicEvaluator::DhsicEvaluator(std::vector<const GramMatrix*> grams)
    : grams_(std::move(grams)) {
    check_gram_set(grams_);
    n_ = grams_.front()->size;
    row_means_.resize(grams_.size());
    grand_mean_product_ = 1.0;
    for (std::size_t j = 0; j < grams_.size(); ++j) {
        std::vector<double> means;
        double grand = 0.0;
        row_and_grand_means(*grams_[j], means, grand);
        grand_mean_product_ *= grand;
        std::vector<double> duplicated(2 * n_);
        for (std::size_t r = 0; r < n_; ++r) duplicated[r] = duplicated[r + n_] = means[r];
        row_means_[j] = std::move(duplicated);
    }
}

void DhsicEvaluator::ensure_diagonal_layout() const {
    if (!diag_.empty()) return;
    const std::size_t d = grams_.size();
    const std::size_t n = n_;
    std::vector<std::vector<double>> diag(d);
    for (std::size_t j = 0; j < d; ++j) {
        diag[j].resize(n * 2 * n);
        const double* k = grams_[j]->values.data();
        double* out = diag[j].data();
        for (std::size_t delta = 0; delta < n; ++delta) {
            double* row = out + delta * 2 * n;
            for (std::size_t r = 0; r < n; ++r) {
                const std::size_t col = r + delta < n ? r + delta : r + delta - n;
                row[r] = k[r * n + col];
                row[r + n] = row[r];
            }
        }
    }
    diag_ = std::move(diag);
}

std::vector<double> DhsicEvaluator::shift_statistics(
    std::span<const std::vector<std::uint32_t>> offsets, int threads) const {
    ensure_diagonal_layout();
    const std::size_t d = grams_.size();
    const std::size_t n = n_;
    const std::size_t batch = offsets.size();
    for (const auto& o : offsets) {
        if (o.size() != d) {
            throw Error(ErrorCode::SizeMismatch, "one offset per variable required");
        }
    }

    const std::size_t chunks = (n + kDeltaChunk - 1) / kDeltaChunk;
    std::vector<double> partials(chunks * batch, 0.0);

    parallel_for(chunks, threads, [&](std::size_t chunk) {
        const std::size_t delta_begin = chunk * kDeltaChunk;
        const std::size_t delta_end = std::min(n, delta_begin + kDeltaChunk);
        double* out = partials.data() + chunk * batch;
        const double* rows[16];
        std::vector<const double*> rows_large;
        const double** row_ptrs = rows;
        if (d > 16) {
            rows_large.resize(d);
            row_ptrs = rows_large.data();
        }
        for (std::size_t delta = delta_begin; delta < delta_end; ++delta) {
            for (std::size_t s = 0; s < batch; ++s) {
                const auto& c = offsets[s];
                for (std::size_t j = 0; j < d; ++j) {
                    row_ptrs[j] = diag_[j].data() + delta * 2 * n + c[j];
                }
                out[s] += contiguous_product_sum(row_ptrs, d, n);
            }
        }
    });

    const double nn = static_cast<double>(n);
    std::vector<double> stats(batch);
    for (std::size_t s = 0; s < batch; ++s) {
        KahanAccumulator term1;
        for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
            term1.add(partials[chunk * batch + s]);
        }
        const auto& c = offsets[s];
        double term3 = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            double prod = 1.0;
            for (std::size_t j = 0; j < d; ++j) prod *= row_means_[j][a + c[j]];
            term3 += prod;
        }
        stats[s] = term1.sum / (nn * nn) + grand_mean_product_ - 2.0 * term3 / nn;
    }
    return stats;
}

std::vector<double> DhsicEvaluator::permutation_statistics(
    std::span<const std::vector<std::vector<std::uint32_t>>> perms, int threads) const {
    const std::size_t d = grams_.size();
    const std::size_t n = n_;
    const std::size_t batch = perms.size();
    for (const auto& p : perms) {
        if (p.size() != d) {
            throw Error(ErrorCode::SizeMismatch, "one permutation per variable required");
        }
        for (const auto& perm : p) {
            if (!perm.empty() && perm.size() != n) {
                throw Error(ErrorCode::SizeMismatch, "permutation length differs from n");
            }
        }
    }

    std::vector<double> stats(batch, 0.0);
    const double nn = static_cast<double>(n);

    parallel_for(batch, threads, [&](std::size_t s) {
        const auto& perm_set = perms[s];
        auto index_of = [&](std::size_t j, std::size_t i) -> std::size_t {
            return perm_set[j].empty() ? i : perm_set[j][i];
        };

        KahanAccumulator term1;
        double term3 = 0.0;
        std::vector<const double*> rows(d);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t j = 0; j < d; ++j) {
                rows[j] = grams_[j]->values.data() + index_of(j, a) * n;
            }
            double row_sum = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                double prod = 1.0;
                for (std::size_t j = 0; j < d; ++j) prod *= rows[j][index_of(j, b)];
                row_sum += prod;
            }
            term1.add(row_sum);

            double mean_prod = 1.0;
            for (std::size_t j = 0; j < d; ++j) mean_prod *= row_means_[j][index_of(j, a)];
            term3 += mean_prod;
        }
        stats[s] = term1.sum / (nn * nn) + grand_mean_product_ - 2.0 * term3 / nn;
    });
    return stats;
}

double DhsicEvaluator::observed_shift() const {
    const std::vector<std::vector<std::uint32_t>> zero(
        1, std::vector<std::uint32_t>(grams_.size(), 0));
    return shift_statistics(zero, 1).front();
}

double DhsicEvaluator::observed_permutation() const {
    const std::vector<std::vector<std::vector<std::uint32_t>>> identity(
        1, std::vector<std::vector<std::uint32_t>>(grams_.size()));
    return permutation_statistics(identity, 1).front();
}

}  // namespace tsdhsic
