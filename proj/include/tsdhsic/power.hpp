#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsdhsic/resampling.hpp"
#include "tsdhsic/synthgen.hpp"

namespace tsdhsic {

/// One sweep axis. Recognized names: "T", "N", "dep_coef", "ar_coef",
/// "num_null"; any other name is applied to the generator's extra map.
struct GridAxis {
    std::string name;
    std::vector<double> values;
};

struct PowerCell {
    std::vector<std::pair<std::string, double>> params;
    double power = 0.0;
    double ci_half_width = 0.0;  // 1.96 * sqrt(power * (1 - power) / repeats)
    std::size_t repeats = 0;
    std::uint64_t cell_seed = 0;
    std::string error;  // nonempty when every repeat of the cell failed
};

struct PowerCurve {
    std::vector<PowerCell> cells;
    std::size_t repeats = 0;
    std::uint64_t master_seed = 0;
};

/// Rejection rate per grid point over `repeats` independent seeded
/// generate-and-test cycles (dataset and test seeds derive from
/// (master seed, cell index, repeat index)). A failing cell is recorded in
/// its `error` field rather than aborting the sweep. Fully deterministic,
/// bitwise identical for any thread count.
[[nodiscard]] PowerCurve power_sweep(const GeneratorSpec& base, std::span<const GridAxis> grid,
                                     const TestConfig& config, std::size_t repeats);

/// Power as a function of the null-sample count. The P values share datasets
/// and Gram matrices within each repeat (and draw their null statistics from
/// the same per-draw streams), so the comparison across P is paired.
[[nodiscard]] PowerCurve null_sample_robustness(const GeneratorSpec& base,
                                                const TestConfig& config,
                                                std::span<const std::size_t> null_counts,
                                                std::size_t repeats);

/// Tidy CSV: one column per swept parameter, then power, ci_half_width,
/// repeats, error.
void write_power_csv(const PowerCurve& curve, std::ostream& out);

}  // namespace tsdhsic
