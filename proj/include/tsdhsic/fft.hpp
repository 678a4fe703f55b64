#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tsdhsic {

/// Forward DFT of a real signal: full length-N complex spectrum, bin k at
/// frequency k * fs / N.
[[nodiscard]] std::vector<std::complex<double>> dft_real(std::span<const double> signal);

/// Inverse DFT of a full complex spectrum, normalized by 1/N.
[[nodiscard]] std::vector<std::complex<double>> idft(
    std::span<const std::complex<double>> spectrum);

}  // namespace tsdhsic
