#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsdhsic/panel.hpp"

namespace tsdhsic {

enum class GeneratorKind {
    case1,        // X, Y independent AR(1/2); Z couples through sign(X*Y) (pure 3-way)
    case2,        // Z couples additively through X + Y (pairwise + 3-way)
    case3,        // three independent AR(a) processes
    ns_linear,    // random walks with a shared linear trend, additive coupling
    ns_nonlinear, // nonstationary with a t*sin(t/3) trend
    ns_complex,   // logistic-ramp trend, coupling modulated by sin(t)
    ns_pure3way,  // AR(a) with t*sin(t)/t*cos(t) drift, coupling d*t*(X+Y)
    freqmix,      // two sinusoidal roots, quadratic mixing, phase panel output
    xor_chain,    // boolean chains, Z = noisy XOR of X, Y, W
};

[[nodiscard]] const char* generator_kind_name(GeneratorKind kind) noexcept;
[[nodiscard]] GeneratorKind generator_kind_from_name(const std::string& name);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::case3;
    std::size_t length = 100;       // T
    std::size_t realizations = 1;   // N
    double dep_coef = 0.0;          // d in the coupling terms
    double ar_coef = 0.5;           // a in the AR recursions
    std::map<std::string, double> extra;  // kind-specific parameters
    std::uint64_t seed = 0;

    // Recognized extras (with defaults): f1 (7), f2 (18), sample_rate (100),
    // noise_sigma (0.05), amp1 (1), amp2 (1), half_bandwidth (1.5),
    // flip_prob (0.05).
    [[nodiscard]] double extra_or(const std::string& key, double fallback) const;

    void validate() const;
};

/// Dispatch on spec.kind. freqmix yields the instantaneous-phase panel.
/// Realizations use disjoint derived seeds; every generator is a pure
/// function of the spec.
[[nodiscard]] TimeSeriesPanel generate(const GeneratorSpec& spec);

[[nodiscard]] TimeSeriesPanel gen_case1(const GeneratorSpec& spec);
[[nodiscard]] TimeSeriesPanel gen_case2(const GeneratorSpec& spec);
[[nodiscard]] TimeSeriesPanel gen_case3(const GeneratorSpec& spec);
[[nodiscard]] TimeSeriesPanel gen_nonstationary(const GeneratorSpec& spec);
[[nodiscard]] TimeSeriesPanel gen_xor(const GeneratorSpec& spec);

/// Raw frequency-mixing bundle: two sinusoidal roots with random initial
/// phases and additive noise, and the quadratically mixed signal
/// (root1 + root2)^2 carrying harmonics at 2 f1, 2 f2 and emergents at
/// f2 - f1 and f1 + f2.
struct FreqMixSignals {
    std::vector<double> root1;
    std::vector<double> root2;
    std::vector<double> mixed;
    double sample_rate = 0.0;
};

[[nodiscard]] FreqMixSignals gen_freqmix(const GeneratorSpec& spec);

/// Instantaneous phase of the component of `signal` near `center_freq`:
/// zero-phase rectangular band-pass of half-width `half_bandwidth`, analytic
/// signal via the frequency domain, elementwise argument in (-pi, pi].
/// Requires 0 < center_freq - half_bandwidth and
/// center_freq + half_bandwidth < fs / 2.
[[nodiscard]] std::vector<double> extract_phase(std::span<const double> signal,
                                                double center_freq, double half_bandwidth,
                                                double fs);

/// Panel of the four instantaneous phases (roots at f1 and f2, emergents at
/// f2 - f1 and f1 + f2 taken from the mixed signal), variables named by
/// frequency ("p7", "p11", ...) in ascending order.
[[nodiscard]] TimeSeriesPanel freqmix_phase_panel(const GeneratorSpec& spec);

/// Raw bundle as a 3-variable panel (root1, root2, mixed).
[[nodiscard]] TimeSeriesPanel freqmix_raw_panel(const GeneratorSpec& spec);

// Circular helpers for phase series.
[[nodiscard]] double wrap_angle(double radians) noexcept;        // to (-pi, pi]
[[nodiscard]] double circular_variance(std::span<const double> angles);  // 1 - |mean e^{i a}|

}  // namespace tsdhsic
