#include "tsdhsic/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "tsdhsic/error.hpp"

namespace tsdhsic {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution of a private
// plan on its own arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> transform(std::span<const std::complex<double>> input,
                                            int direction) {
    if (input.empty()) throw Error(ErrorCode::EmptyInput, "empty signal");
    const int n = static_cast<int>(input.size());
    std::vector<std::complex<double>> in(input.begin(), input.end());
    std::vector<std::complex<double>> out(input.size());

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), direction,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> dft_real(std::span<const double> signal) {
    std::vector<std::complex<double>> input(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) input[i] = signal[i];
    return transform(input, FFTW_FORWARD);
}

std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum) {
    auto out = transform(spectrum, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace tsdhsic
