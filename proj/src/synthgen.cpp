#include "tsdhsic/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "tsdhsic/error.hpp"
#include "tsdhsic/fft.hpp"
#include "tsdhsic/rng.hpp"

namespace tsdhsic {

namespace {

// AR generators discard this many initial steps so recorded samples start
// near stationarity. Trend-driven (nonstationary) generators keep t = 1
// as the first recorded step instead.
constexpr std::size_t kBurnIn = 100;

constexpr double kPi = std::numbers::pi;

double sign_of(double v) noexcept { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

SeriesMatrix make_series(std::string name, std::size_t realizations, std::size_t length) {
    SeriesMatrix series;
    series.name = std::move(name);
    series.realizations = realizations;
    series.length = length;
    series.values.assign(realizations * length, 0.0);
    return series;
}

std::string frequency_label(double freq) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "p%g", freq);
    return buffer;
}

/// Shared skeleton of the three stationary AR toys. The per-variable noise
/// streams are derived as (seed, realization, variable), so structurally
/// identical cases draw identical noise (case2 with dep_coef = 0 reproduces
/// case3 with a = 1/2 exactly).
template <typename StepZ>
TimeSeriesPanel ar_panel(const GeneratorSpec& spec, double ar_x, double ar_y,
                         bool needs_theta, StepZ&& step_z) {
    const std::size_t n = spec.realizations;
    const std::size_t len = spec.length;
    TimeSeriesPanel panel;
    panel.variables = {make_series("X", n, len), make_series("Y", n, len),
                       make_series("Z", n, len)};
    for (std::size_t i = 0; i < n; ++i) {
        auto sx = derive_stream(spec.seed, i, 0);
        auto sy = derive_stream(spec.seed, i, 1);
        auto sz = derive_stream(spec.seed, i, 2);
        auto stheta = derive_stream(spec.seed, i, 3);
        double x = 0.0, y = 0.0, z = 0.0;
        for (std::size_t t = 0; t < len + kBurnIn; ++t) {
            x = ar_x * x + sx.next_normal();
            y = ar_y * y + sy.next_normal();
            const double theta = needs_theta ? stheta.next_normal() : 0.0;
            z = step_z(z, x, y, theta, sz);
            if (t >= kBurnIn) {
                const std::size_t at = t - kBurnIn;
                panel.variables[0].values[i * len + at] = x;
                panel.variables[1].values[i * len + at] = y;
                panel.variables[2].values[i * len + at] = z;
            }
        }
    }
    return panel;
}

}  // namespace

const char* generator_kind_name(GeneratorKind kind) noexcept {
    switch (kind) {
        case GeneratorKind::case1: return "case1";
        case GeneratorKind::case2: return "case2";
        case GeneratorKind::case3: return "case3";
        case GeneratorKind::ns_linear: return "ns_linear";
        case GeneratorKind::ns_nonlinear: return "ns_nonlinear";
        case GeneratorKind::ns_complex: return "ns_complex";
        case GeneratorKind::ns_pure3way: return "ns_pure3way";
        case GeneratorKind::freqmix: return "freqmix";
        case GeneratorKind::xor_chain: return "xor";
    }
    return "unknown";
}

GeneratorKind generator_kind_from_name(const std::string& name) {
    static const std::map<std::string, GeneratorKind> lookup = {
        {"case1", GeneratorKind::case1},
        {"case2", GeneratorKind::case2},
        {"case3", GeneratorKind::case3},
        {"ns_linear", GeneratorKind::ns_linear},
        {"ns_nonlinear", GeneratorKind::ns_nonlinear},
        {"ns_complex", GeneratorKind::ns_complex},
        {"ns_pure3way", GeneratorKind::ns_pure3way},
        {"freqmix", GeneratorKind::freqmix},
        {"xor", GeneratorKind::xor_chain},
    };
    const auto it = lookup.find(name);
    if (it == lookup.end()) {
        throw Error(ErrorCode::InvalidConfig, "unknown generator kind '" + name + "'");
    }
    return it->second;
}

double GeneratorSpec::extra_or(const std::string& key, double fallback) const {
    const auto it = extra.find(key);
    return it == extra.end() ? fallback : it->second;
}

void GeneratorSpec::validate() const {
    if (length < 1) throw Error(ErrorCode::InvalidConfig, "T must be at least 1");
    if (realizations < 1) throw Error(ErrorCode::InvalidConfig, "N must be at least 1");
    if (!std::isfinite(dep_coef) || !std::isfinite(ar_coef)) {
        throw Error(ErrorCode::InvalidConfig, "coefficients must be finite");
    }
    switch (kind) {
        case GeneratorKind::case1:
        case GeneratorKind::case2:
            if (length < 2) throw Error(ErrorCode::InvalidConfig, "T must be at least 2");
            break;
        case GeneratorKind::freqmix: {
            const double f1 = extra_or("f1", 7.0);
            const double f2 = extra_or("f2", 18.0);
            const double fs = extra_or("sample_rate", 100.0);
            if (!(f1 > 0.0) || !(f2 > f1)) {
                throw Error(ErrorCode::InvalidConfig, "freqmix requires 0 < f1 < f2");
            }
            if (!(fs > 2.0 * (f1 + f2))) {
                throw Error(ErrorCode::InvalidConfig,
                            "sample rate must exceed twice the highest mixing product");
            }
            break;
        }
        case GeneratorKind::xor_chain: {
            const double flip = extra_or("flip_prob", 0.05);
            if (!(flip >= 0.0 && flip < 0.5)) {
                throw Error(ErrorCode::InvalidConfig, "flip probability must lie in [0, 0.5)");
            }
            break;
        }
        default:
            break;
    }
}

TimeSeriesPanel generate(const GeneratorSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case GeneratorKind::case1: return gen_case1(spec);
        case GeneratorKind::case2: return gen_case2(spec);
        case GeneratorKind::case3: return gen_case3(spec);
        case GeneratorKind::ns_linear:
        case GeneratorKind::ns_nonlinear:
        case GeneratorKind::ns_complex:
        case GeneratorKind::ns_pure3way: return gen_nonstationary(spec);
        case GeneratorKind::freqmix: return freqmix_phase_panel(spec);
        case GeneratorKind::xor_chain: return gen_xor(spec);
    }
    throw Error(ErrorCode::InvalidConfig, "unhandled generator kind");
}

TimeSeriesPanel gen_case1(const GeneratorSpec& spec) {
    spec.validate();
    const double dep = spec.dep_coef;
    return ar_panel(spec, 0.5, 0.5, true,
                    [dep](double z, double x, double y, double theta, RngStream& sz) {
                        return 0.5 * z + dep * std::abs(theta) * sign_of(x * y) +
                               sz.next_normal();
                    });
}

TimeSeriesPanel gen_case2(const GeneratorSpec& spec) {
    spec.validate();
    const double dep = spec.dep_coef;
    return ar_panel(spec, 0.5, 0.5, false,
                    [dep](double z, double x, double y, double, RngStream& sz) {
                        return 0.5 * z + dep * (x + y) + sz.next_normal();
                    });
}

TimeSeriesPanel gen_case3(const GeneratorSpec& spec) {
    spec.validate();
    const double a = spec.ar_coef;
    return ar_panel(spec, a, a, false, [a](double z, double, double, double, RngStream& sz) {
        return a * z + sz.next_normal();
    });
}

TimeSeriesPanel gen_nonstationary(const GeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.realizations;
    const std::size_t len = spec.length;
    const double dep = spec.dep_coef;
    const double a = spec.ar_coef;
    const auto kind = spec.kind;
    if (kind != GeneratorKind::ns_linear && kind != GeneratorKind::ns_nonlinear &&
        kind != GeneratorKind::ns_complex && kind != GeneratorKind::ns_pure3way) {
        throw Error(ErrorCode::InvalidConfig, "not a nonstationary kind");
    }

    const double ramp_center = static_cast<double>(len) / 2.0;
    const double ramp_scale = std::max(1.0, static_cast<double>(len) / 10.0);
    auto trend = [&](double t) -> double {
        switch (kind) {
            case GeneratorKind::ns_linear: return t;
            case GeneratorKind::ns_nonlinear: return t * std::sin(t / 3.0);
            case GeneratorKind::ns_complex:
                return 10.0 / (1.0 + std::exp(-(t - ramp_center) / ramp_scale));
            default: return 0.0;
        }
    };

    TimeSeriesPanel panel;
    panel.variables = {make_series("X", n, len), make_series("Y", n, len),
                       make_series("Z", n, len)};
    for (std::size_t i = 0; i < n; ++i) {
        auto sx = derive_stream(spec.seed, i, 0);
        auto sy = derive_stream(spec.seed, i, 1);
        auto sz = derive_stream(spec.seed, i, 2);
        double x_prev = 0.0, y_prev = 0.0, z_prev = 0.0;
        for (std::size_t step = 0; step < len; ++step) {
            const double t = static_cast<double>(step + 1);
            double x, y, z;
            // The coupling enters through the previous values: the dependence
            // propagates in time and vanishes when only one time point is
            // observed.
            switch (kind) {
                case GeneratorKind::ns_pure3way:
                    x = a * x_prev + t * std::sin(t) + sx.next_normal();
                    y = a * y_prev + t * std::cos(t) + sy.next_normal();
                    z = a * z_prev + dep * t * (x_prev + y_prev) + sz.next_normal();
                    break;
                case GeneratorKind::ns_complex:
                    x = x_prev + trend(t) + sx.next_normal();
                    y = y_prev + trend(t) + sy.next_normal();
                    z = z_prev + trend(t) +
                        dep * (x_prev + y_prev) * (1.0 + 0.5 * std::sin(t)) +
                        sz.next_normal();
                    break;
                default:
                    x = x_prev + trend(t) + sx.next_normal();
                    y = y_prev + trend(t) + sy.next_normal();
                    z = z_prev + trend(t) + dep * (x_prev + y_prev) + sz.next_normal();
                    break;
            }
            panel.variables[0].values[i * len + step] = x;
            panel.variables[1].values[i * len + step] = y;
            panel.variables[2].values[i * len + step] = z;
            x_prev = x;
            y_prev = y;
            z_prev = z;
        }
    }
    return panel;
}

TimeSeriesPanel gen_xor(const GeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.realizations;
    const std::size_t len = spec.length;
    const double flip = spec.extra_or("flip_prob", 0.05);

    TimeSeriesPanel panel;
    panel.variables = {make_series("X", n, len), make_series("Y", n, len),
                       make_series("W", n, len), make_series("Z", n, len)};
    for (std::size_t i = 0; i < n; ++i) {
        auto sx = derive_stream(spec.seed, i, 0);
        auto sy = derive_stream(spec.seed, i, 1);
        auto sw = derive_stream(spec.seed, i, 2);
        auto sz = derive_stream(spec.seed, i, 3);
        unsigned x = sx.next_double() < 0.5 ? 1 : 0;
        unsigned y = sy.next_double() < 0.5 ? 1 : 0;
        unsigned w = sw.next_double() < 0.5 ? 1 : 0;
        for (std::size_t t = 0; t < len; ++t) {
            if (t > 0) {
                if (sx.next_double() < flip) x ^= 1u;
                if (sy.next_double() < flip) y ^= 1u;
                if (sw.next_double() < flip) w ^= 1u;
            }
            unsigned z = x ^ y ^ w;
            if (sz.next_double() < flip) z ^= 1u;
            panel.variables[0].values[i * len + t] = static_cast<double>(x);
            panel.variables[1].values[i * len + t] = static_cast<double>(y);
            panel.variables[2].values[i * len + t] = static_cast<double>(w);
            panel.variables[3].values[i * len + t] = static_cast<double>(z);
        }
    }
    return panel;
}

namespace {

FreqMixSignals freqmix_realization(const GeneratorSpec& spec, std::size_t realization) {
    const std::size_t len = spec.length;
    const double f1 = spec.extra_or("f1", 7.0);
    const double f2 = spec.extra_or("f2", 18.0);
    const double fs = spec.extra_or("sample_rate", 100.0);
    const double sigma = spec.extra_or("noise_sigma", 0.05);
    const double amp1 = spec.extra_or("amp1", 1.0);
    const double amp2 = spec.extra_or("amp2", 1.0);

    auto s1 = derive_stream(spec.seed, realization, 0);
    auto s2 = derive_stream(spec.seed, realization, 1);
    const double phi1 = 2.0 * kPi * s1.next_double();
    const double phi2 = 2.0 * kPi * s2.next_double();

    FreqMixSignals out;
    out.sample_rate = fs;
    out.root1.resize(len);
    out.root2.resize(len);
    out.mixed.resize(len);
    for (std::size_t t = 0; t < len; ++t) {
        const double time = static_cast<double>(t) / fs;
        out.root1[t] = amp1 * std::sin(2.0 * kPi * f1 * time + phi1) + sigma * s1.next_normal();
        out.root2[t] = amp2 * std::sin(2.0 * kPi * f2 * time + phi2) + sigma * s2.next_normal();
        const double sum = out.root1[t] + out.root2[t];
        out.mixed[t] = sum * sum;
    }
    return out;
}

}  // namespace

FreqMixSignals gen_freqmix(const GeneratorSpec& spec) {
    spec.validate();
    return freqmix_realization(spec, 0);
}

std::vector<double> extract_phase(std::span<const double> signal, double center_freq,
                                  double half_bandwidth, double fs) {
    if (signal.size() < 2) throw Error(ErrorCode::EmptyInput, "signal too short");
    if (!(center_freq - half_bandwidth > 0.0) ||
        !(center_freq + half_bandwidth < fs / 2.0)) {
        throw Error(ErrorCode::InvalidConfig, "pass band outside (0, fs/2)");
    }

    const std::size_t n = signal.size();
    const auto spectrum = dft_real(signal);

    // Keep only positive-frequency bins inside the band, doubled: the inverse
    // transform is then the analytic signal of the band-passed input.
    std::vector<std::complex<double>> analytic_spectrum(n, {0.0, 0.0});
    const double bin_hz = fs / static_cast<double>(n);
    for (std::size_t k = 1; k < (n + 1) / 2; ++k) {
        const double freq = static_cast<double>(k) * bin_hz;
        if (std::abs(freq - center_freq) <= half_bandwidth) {
            analytic_spectrum[k] = 2.0 * spectrum[k];
        }
    }
    const auto analytic = idft(analytic_spectrum);

    std::vector<double> phase(n);
    for (std::size_t t = 0; t < n; ++t) {
        double p = std::atan2(analytic[t].imag(), analytic[t].real());
        if (p <= -kPi) p = kPi;
        phase[t] = p;
    }
    return phase;
}

TimeSeriesPanel freqmix_phase_panel(const GeneratorSpec& spec) {
    spec.validate();
    const double f1 = spec.extra_or("f1", 7.0);
    const double f2 = spec.extra_or("f2", 18.0);
    const double fs = spec.extra_or("sample_rate", 100.0);
    const double half_bw = spec.extra_or("half_bandwidth", 1.5);
    const std::size_t n = spec.realizations;
    const std::size_t len = spec.length;

    // The pure quadratic suppresses the input lines, so root phases come from
    // the roots themselves and the emergent phases from the mixed signal.
    struct Target {
        double freq;
        int source;  // 0 = root1, 1 = root2, 2 = mixed
    };
    std::vector<Target> targets = {
        {f1, 0}, {f2, 1}, {f2 - f1, 2}, {f1 + f2, 2}};
    std::sort(targets.begin(), targets.end(),
              [](const Target& a, const Target& b) { return a.freq < b.freq; });

    TimeSeriesPanel panel;
    for (const auto& target : targets) {
        panel.variables.push_back(make_series(frequency_label(target.freq), n, len));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto signals = freqmix_realization(spec, i);
        for (std::size_t v = 0; v < targets.size(); ++v) {
            const std::vector<double>* source = &signals.mixed;
            if (targets[v].source == 0) source = &signals.root1;
            if (targets[v].source == 1) source = &signals.root2;
            const auto phase = extract_phase(*source, targets[v].freq, half_bw, fs);
            std::copy(phase.begin(), phase.end(),
                      panel.variables[v].values.begin() + static_cast<std::ptrdiff_t>(i * len));
        }
    }
    return panel;
}

TimeSeriesPanel freqmix_raw_panel(const GeneratorSpec& spec) {
    spec.validate();
    const std::size_t n = spec.realizations;
    const std::size_t len = spec.length;
    TimeSeriesPanel panel;
    panel.variables = {make_series("root1", n, len), make_series("root2", n, len),
                       make_series("mixed", n, len)};
    for (std::size_t i = 0; i < n; ++i) {
        const auto signals = freqmix_realization(spec, i);
        std::copy(signals.root1.begin(), signals.root1.end(),
                  panel.variables[0].values.begin() + static_cast<std::ptrdiff_t>(i * len));
        std::copy(signals.root2.begin(), signals.root2.end(),
                  panel.variables[1].values.begin() + static_cast<std::ptrdiff_t>(i * len));
        std::copy(signals.mixed.begin(), signals.mixed.end(),
                  panel.variables[2].values.begin() + static_cast<std::ptrdiff_t>(i * len));
    }
    return panel;
}

double wrap_angle(double radians) noexcept {
    double wrapped = std::remainder(radians, 2.0 * kPi);
    if (wrapped <= -kPi) wrapped = kPi;
    return wrapped;
}

double circular_variance(std::span<const double> angles) {
    if (angles.empty()) throw Error(ErrorCode::EmptyInput, "no angles");
    double sum_cos = 0.0, sum_sin = 0.0;
    for (double a : angles) {
        sum_cos += std::cos(a);
        sum_sin += std::sin(a);
    }
    const double n = static_cast<double>(angles.size());
    return 1.0 - std::hypot(sum_cos / n, sum_sin / n);
}

}  // namespace tsdhsic
