#include "tsdhsic/panel.hpp"

#include <cmath>

#include "tsdhsic/error.hpp"

namespace tsdhsic {

std::size_t TimeSeriesPanel::realizations() const {
    if (variables.empty()) throw Error(ErrorCode::EmptyInput, "panel has no variables");
    return variables.front().realizations;
}

void TimeSeriesPanel::validate() const {
    if (variables.empty()) throw Error(ErrorCode::EmptyInput, "panel has no variables");
    const std::size_t n = variables.front().realizations;
    for (const auto& var : variables) {
        if (var.realizations == 0 || var.length == 0) {
            throw Error(ErrorCode::EmptyInput, "variable '" + var.name + "' is empty");
        }
        if (var.realizations != n) {
            throw Error(ErrorCode::SizeMismatch,
                        "variable '" + var.name + "' has " + std::to_string(var.realizations) +
                            " realizations, expected " + std::to_string(n));
        }
        if (var.values.size() != var.realizations * var.length) {
            throw Error(ErrorCode::SizeMismatch,
                        "variable '" + var.name + "' storage does not match its shape");
        }
        for (double v : var.values) {
            if (!std::isfinite(v)) {
                throw Error(ErrorCode::NonFiniteValue,
                            "variable '" + var.name + "' contains a non-finite value");
            }
        }
    }
    if (n == 1) {
        const std::size_t t0 = variables.front().length;
        for (const auto& var : variables) {
            if (var.length != t0) {
                throw Error(ErrorCode::ModeMismatch,
                            "single-realization panels require equal series lengths; '" +
                                var.name + "' has " + std::to_string(var.length) +
                                ", expected " + std::to_string(t0));
            }
        }
    }
}

TimeSeriesPanel TimeSeriesPanel::select(std::span<const std::size_t> indices) const {
    TimeSeriesPanel out;
    out.variables.reserve(indices.size());
    for (std::size_t idx : indices) {
        if (idx >= variables.size()) {
            throw Error(ErrorCode::InvalidConfig,
                        "variable index " + std::to_string(idx) + " out of range");
        }
        out.variables.push_back(variables[idx]);
    }
    return out;
}

TimeSeriesPanel TimeSeriesPanel::select(std::span<const std::string> names) const {
    std::vector<std::size_t> indices;
    indices.reserve(names.size());
    for (const auto& name : names) indices.push_back(index_of(name));
    return select(indices);
}

std::size_t TimeSeriesPanel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i].name == name) return i;
    }
    throw Error(ErrorCode::InvalidConfig, "no variable named '" + name + "'");
}

}  // namespace tsdhsic
