#include "tsdhsic/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "tsdhsic/error.hpp"
#include "tsdhsic/parallel.hpp"

namespace tsdhsic {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

SampleView as_view(const std::vector<std::vector<double>>& samples,
                   std::vector<double>& storage) {
    if (samples.empty()) return {nullptr, 0, 0};
    const std::size_t dim = samples.front().size();
    for (const auto& s : samples) {
        if (s.size() != dim) {
            throw Error(ErrorCode::DimensionMismatch, "samples differ in dimension");
        }
    }
    storage.reserve(samples.size() * dim);
    for (const auto& s : samples) storage.insert(storage.end(), s.begin(), s.end());
    return {storage.data(), samples.size(), dim};
}

}  // namespace

double median_heuristic_bandwidth(const SampleView& samples) {
    if (samples.count < 2) {
        throw Error(ErrorCode::EmptyInput, "median heuristic needs at least 2 samples");
    }
    std::vector<double> distances;
    distances.reserve(samples.count * (samples.count - 1) / 2);
    for (std::size_t a = 0; a + 1 < samples.count; ++a) {
        for (std::size_t b = a + 1; b < samples.count; ++b) {
            const double sq = squared_distance(samples.sample(a), samples.sample(b));
            if (sq > 0.0) distances.push_back(std::sqrt(sq));
        }
    }
    if (distances.empty()) {
        throw Error(ErrorCode::AllSamplesIdentical,
                    "all pairwise distances are zero; bandwidth undefined");
    }
    const std::size_t m = distances.size();
    auto upper = distances.begin() + static_cast<std::ptrdiff_t>(m / 2);
    std::nth_element(distances.begin(), upper, distances.end());
    if (m % 2 == 1) return *upper;
    auto lower = std::max_element(distances.begin(), upper);
    return 0.5 * (*lower + *upper);
}

double median_heuristic_bandwidth(const std::vector<std::vector<double>>& samples) {
    std::vector<double> storage;
    return median_heuristic_bandwidth(as_view(samples, storage));
}

GramMatrix gram_matrix(const SampleView& samples, const KernelConfig& config, int threads) {
    if (samples.count == 0) throw Error(ErrorCode::EmptyInput, "no samples");

    double sigma;
    if (config.bandwidth_rule == BandwidthRule::fixed) {
        sigma = config.fixed_sigma;
        if (!(sigma > 0.0)) {
            throw Error(ErrorCode::InvalidConfig, "fixed bandwidth must be positive");
        }
    } else {
        sigma = median_heuristic_bandwidth(samples);
    }

    const std::size_t n = samples.count;
    GramMatrix gram;
    gram.size = n;
    gram.bandwidth = sigma;
    gram.values.assign(n * n, 0.0);

    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    const int row_threads = n >= 256 ? threads : 1;
    parallel_for(n, row_threads, [&](std::size_t a) {
        double* row = gram.values.data() + a * n;
        const auto sa = samples.sample(a);
        for (std::size_t b = 0; b < n; ++b) {
            if (b == a) {
                row[b] = 1.0;
            } else {
                row[b] = std::exp(-squared_distance(sa, samples.sample(b)) * inv_two_sigma_sq);
            }
        }
    });
    return gram;
}

GramMatrix gram_matrix(const std::vector<std::vector<double>>& samples,
                       const KernelConfig& config, int threads) {
    std::vector<double> storage;
    return gram_matrix(as_view(samples, storage), config, threads);
}

}  // namespace tsdhsic
