#include "tsdhsic/preprocess.hpp"

#include <cmath>

#include "tsdhsic/error.hpp"

namespace tsdhsic {

namespace {

// Asymptotic 5% critical value of the Dickey-Fuller t-distribution for the
// constant-only regression (standard Dickey-Fuller tables).
constexpr double kAdf5PctConstOnly = -2.86;

/// Least squares of y on columns of X (row-major, rows x cols). Returns the
/// coefficients and fills `coef_variances` with the diagonal of
/// s^2 (X'X)^-1. Throws SingularRegression when X'X is not invertible.
std::vector<double> ols(const std::vector<double>& design, std::size_t rows, std::size_t cols,
                        const std::vector<double>& response,
                        std::vector<double>& coef_variances) {
    // Normal equations, solved by Gauss-Jordan with partial pivoting on the
    // augmented [X'X | X'y | I] system (cols is tiny here).
    std::vector<double> xtx(cols * cols, 0.0);
    std::vector<double> xty(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* row = design.data() + r * cols;
        for (std::size_t i = 0; i < cols; ++i) {
            xty[i] += row[i] * response[r];
            for (std::size_t j = i; j < cols; ++j) xtx[i * cols + j] += row[i] * row[j];
        }
    }
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < i; ++j) xtx[i * cols + j] = xtx[j * cols + i];
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < cols; ++i) scale = std::max(scale, std::abs(xtx[i * cols + i]));
    if (scale == 0.0) throw Error(ErrorCode::SingularRegression, "all-zero design matrix");

    const std::size_t width = 2 * cols + 1;  // [X'X | X'y | I]
    std::vector<double> aug(cols * width, 0.0);
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i * width + j] = xtx[i * cols + j];
        aug[i * width + cols] = xty[i];
        aug[i * width + cols + 1 + i] = 1.0;
    }

    for (std::size_t col = 0; col < cols; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < cols; ++r) {
            if (std::abs(aug[r * width + col]) > std::abs(aug[pivot * width + col])) pivot = r;
        }
        if (std::abs(aug[pivot * width + col]) < 1e-12 * scale) {
            throw Error(ErrorCode::SingularRegression, "rank-deficient design matrix");
        }
        if (pivot != col) {
            for (std::size_t k = 0; k < width; ++k) {
                std::swap(aug[pivot * width + k], aug[col * width + k]);
            }
        }
        const double inv = 1.0 / aug[col * width + col];
        for (std::size_t k = 0; k < width; ++k) aug[col * width + k] *= inv;
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == col) continue;
            const double factor = aug[r * width + col];
            if (factor == 0.0) continue;
            for (std::size_t k = 0; k < width; ++k) {
                aug[r * width + k] -= factor * aug[col * width + k];
            }
        }
    }

    std::vector<double> beta(cols);
    for (std::size_t i = 0; i < cols; ++i) beta[i] = aug[i * width + cols];

    double rss = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double fitted = 0.0;
        const double* row = design.data() + r * cols;
        for (std::size_t i = 0; i < cols; ++i) fitted += row[i] * beta[i];
        const double resid = response[r] - fitted;
        rss += resid * resid;
    }
    if (rows <= cols) throw Error(ErrorCode::SingularRegression, "no residual degrees of freedom");
    const double sigma_sq = rss / static_cast<double>(rows - cols);

    coef_variances.resize(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        coef_variances[i] = sigma_sq * aug[i * width + cols + 1 + i];
    }
    return beta;
}

}  // namespace

std::vector<double> difference(std::span<const double> series, std::size_t period) {
    if (period == 0) throw Error(ErrorCode::InvalidConfig, "period must be positive");
    if (series.size() <= period) {
        throw Error(ErrorCode::SeriesTooShort,
                    "differencing of period " + std::to_string(period) + " needs more than " +
                        std::to_string(period) + " points");
    }
    std::vector<double> out(series.size() - period);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = series[t + period] - series[t];
    return out;
}

std::vector<double> block_average(std::span<const double> series, std::size_t block) {
    if (block == 0) throw Error(ErrorCode::InvalidConfig, "block must be positive");
    if (series.size() < block) {
        throw Error(ErrorCode::SeriesTooShort, "series shorter than one block");
    }
    const std::size_t blocks = series.size() / block;
    std::vector<double> out(blocks);
    for (std::size_t i = 0; i < blocks; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < block; ++k) sum += series[i * block + k];
        out[i] = sum / static_cast<double>(block);
    }
    return out;
}

std::vector<double> zscore(std::span<const double> series) {
    if (series.size() < 2) throw Error(ErrorCode::SeriesTooShort, "need at least 2 points");
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(series.size());
    double var = 0.0;
    for (double v : series) var += (v - mean) * (v - mean);
    var /= static_cast<double>(series.size() - 1);
    if (var == 0.0) throw Error(ErrorCode::DegenerateSeries, "constant series has no scale");
    const double inv_sd = 1.0 / std::sqrt(var);
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - mean) * inv_sd;
    return out;
}

AdfReport adf_test(std::span<const double> series, std::size_t lag_order) {
    if (series.size() < lag_order + 10) {
        throw Error(ErrorCode::SeriesTooShort, "ADF needs at least lag_order + 10 points");
    }
    const std::size_t len = series.size();
    // dy[t] = y[t+1] - y[t] for t in [0, len-1).
    std::vector<double> dy(len - 1);
    for (std::size_t t = 0; t + 1 < len; ++t) dy[t] = series[t + 1] - series[t];

    // Rows correspond to time indices lag_order .. len-2 of dy.
    const std::size_t rows = dy.size() - lag_order;
    const std::size_t cols = 2 + lag_order;  // intercept, y_{t-1}, lagged dy
    std::vector<double> design(rows * cols);
    std::vector<double> response(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + lag_order;  // index into dy
        double* row = design.data() + r * cols;
        row[0] = 1.0;
        row[1] = series[t];  // y_{t-1} relative to dy[t]
        for (std::size_t k = 0; k < lag_order; ++k) row[2 + k] = dy[t - 1 - k];
        response[r] = dy[t];
    }

    std::vector<double> variances;
    const auto beta = ols(design, rows, cols, response, variances);
    const double se = std::sqrt(variances[1]);
    if (!(se > 0.0)) throw Error(ErrorCode::SingularRegression, "zero standard error");

    AdfReport report;
    report.test_statistic = beta[1] / se;
    report.lag_order = lag_order;
    report.critical_value_5pct = kAdf5PctConstOnly;
    report.stationary = report.test_statistic < report.critical_value_5pct;
    return report;
}

}  // namespace tsdhsic
