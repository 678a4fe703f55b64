#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsdhsic {

/// Lag differencing: out[t] = in[t + period] - in[t]; the output is shorter
/// by `period`. Throws SeriesTooShort unless length > period.
[[nodiscard]] std::vector<double> difference(std::span<const double> series,
                                             std::size_t period);

/// Non-overlapping block means; a trailing partial block is dropped.
/// Throws SeriesTooShort unless length >= block.
[[nodiscard]] std::vector<double> block_average(std::span<const double> series,
                                                std::size_t block);

/// Center and scale to unit sample standard deviation. Throws
/// DegenerateSeries when the series is constant.
[[nodiscard]] std::vector<double> zscore(std::span<const double> series);

struct AdfReport {
    double test_statistic = 0.0;
    std::size_t lag_order = 0;
    double critical_value_5pct = 0.0;
    bool stationary = false;  // test_statistic < critical_value_5pct
};

/// Augmented Dickey-Fuller unit-root check: OLS of dy_t on
/// (1, y_{t-1}, dy_{t-1}, ..., dy_{t-lag}); the statistic is the t-ratio of
/// the y_{t-1} coefficient, compared against the constant-only asymptotic 5%
/// critical value. A screening check, not a full MacKinnon-surface ADF.
///
/// Throws SeriesTooShort (length < lag_order + 10) and SingularRegression.
[[nodiscard]] AdfReport adf_test(std::span<const double> series, std::size_t lag_order = 0);

}  // namespace tsdhsic
