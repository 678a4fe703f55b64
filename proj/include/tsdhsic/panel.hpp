#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsdhsic {

/// One named variable of a panel: `realizations` independent series of
/// `length` time measurements, stored row-major (realization-major).
struct SeriesMatrix {
    std::string name;
    std::size_t realizations = 0;
    std::size_t length = 0;
    std::vector<double> values;  // realizations * length

    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {values.data() + r * length, length};
    }
    [[nodiscard]] std::span<double> row(std::size_t r) {
        return {values.data() + r * length, length};
    }
    [[nodiscard]] double at(std::size_t r, std::size_t t) const {
        return values[r * length + t];
    }
};

/// d co-observed variables sharing a realization count n. Per-variable series
/// lengths may differ except in single-realization mode (n = 1), where the
/// statistic is formed over time points and all lengths must match.
struct TimeSeriesPanel {
    std::vector<SeriesMatrix> variables;

    [[nodiscard]] std::size_t variable_count() const { return variables.size(); }

    /// Shared realization count n (validated identical across variables).
    [[nodiscard]] std::size_t realizations() const;

    [[nodiscard]] bool single_realization() const { return realizations() == 1; }

    /// Checks all structural invariants; throws Error on violation.
    /// NonFiniteValue, SizeMismatch, ModeMismatch (n = 1 with ragged lengths).
    void validate() const;

    /// Sub-panel with the given variables, in the given order.
    [[nodiscard]] TimeSeriesPanel select(std::span<const std::size_t> indices) const;
    [[nodiscard]] TimeSeriesPanel select(std::span<const std::string> names) const;

    [[nodiscard]] std::size_t index_of(const std::string& name) const;
};

}  // namespace tsdhsic
