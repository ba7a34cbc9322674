// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fdsim/error.hpp"
#include "fdsim/fft.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

ComplexBasebandSignal::ComplexBasebandSignal(CVector samples, double sample_rate)
    : samples_(std::move(samples)), fs_(sample_rate) {
    require(std::isfinite(fs_) && fs_ > 0.0, "sample_rate must be positive and finite");
    require(!samples_.empty(), "signal must contain at least one sample");
    for (const auto &s : samples_)
        require(std::isfinite(s.real()) && std::isfinite(s.imag()), "signal contains non-finite samples");
}

double ComplexBasebandSignal::power() const { return mean_power(samples_); }

double mean_power(const CVector &x) {
    if (x.empty())
        return 0.0;
    double acc = 0.0;
    for (const auto &s : x)
        acc += std::norm(s);
    return acc / static_cast<double>(x.size());
}

double db10(double linear) {
    if (linear <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

double power_db(const CVector &x) {
    require(!x.empty(), "power of an empty signal");
    return db10(mean_power(x));
}

double power_db(const ComplexBasebandSignal &x) { return power_db(x.samples()); }

double papr_db(const ComplexBasebandSignal &x) {
    double peak = 0.0;
    for (const auto &s : x.samples())
        peak = std::max(peak, std::norm(s));
    const double p = x.power();
    require(p > 0.0, "PAPR undefined for an all-zero signal");
    return 10.0 * std::log10(peak / p);
}

ComplexBasebandSignal gen_tone(double freq_hz, double amplitude, std::size_t n_samples, double sample_rate) {
    require(sample_rate > 0.0, "sample_rate must be positive");
    require(std::abs(freq_hz) < sample_rate / 2.0,
            "tone frequency " + std::to_string(freq_hz) + " Hz outside Nyquist range +-" +
                std::to_string(sample_rate / 2.0) + " Hz");
    require(amplitude > 0.0 && amplitude <= 1.0, "tone amplitude must lie in (0, 1]");
    require(n_samples >= 1, "tone needs at least one sample");
    CVector out(n_samples);
    // Reduce the phase modulo one cycle in integer arithmetic where possible to keep long tones exact.
    const double cyc = freq_hz / sample_rate;
    for (std::size_t n = 0; n < n_samples; ++n) {
        double ph = cyc * static_cast<double>(n);
        ph -= std::floor(ph);
        out[n] = std::polar(amplitude, 2.0 * std::numbers::pi * ph);
    }
    return {std::move(out), sample_rate};
}

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t oversampling(const OfdmFrameSpec &spec, double fs) {
    require(spec.bandwidth_hz > 0.0, "OFDM bandwidth must be positive");
    require(spec.bandwidth_hz <= fs, "OFDM bandwidth exceeds the sample rate");
    const double ratio = fs / spec.bandwidth_hz;
    const double r = std::round(ratio);
    require(std::abs(ratio - r) < 1e-9 * ratio, "sample rate must be an integer multiple of the OFDM bandwidth");
    return static_cast<std::size_t>(r);
}

} // namespace

std::size_t ofdm_frame_length(const OfdmFrameSpec &spec, double sample_rate) {
    return spec.n_tones * oversampling(spec, sample_rate) + spec.cp_length;
}

ComplexBasebandSignal gen_ofdm_frames(const OfdmFrameSpec &spec, double sample_rate) {
    const std::size_t os = oversampling(spec, sample_rate);
    require(is_pow2(spec.n_tones), "n_tones must be a power of two");
    require(spec.constellation_order == 4 || spec.constellation_order == 16 || spec.constellation_order == 64,
            "constellation_order must be 4, 16 or 64");
    require(spec.n_frames >= 1, "n_frames must be at least 1");
    require(spec.taper_length <= spec.cp_length, "taper_length must not exceed cp_length");

    const std::size_t n = spec.n_tones * os;
    const std::size_t cp = spec.cp_length;
    const std::size_t t = spec.taper_length;
    const std::size_t frame = n + cp;
    const int side = static_cast<int>(std::lround(std::sqrt(spec.constellation_order)));

    std::vector<double> ramp(t);
    for (std::size_t i = 0; i < t; ++i)
        ramp[i] = 0.5 - 0.5 * std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(t));

    Rng rng = make_rng(spec.seed, "ofdm/symbols");
    std::uniform_int_distribution<int> level(0, side - 1);

    CVector out(spec.n_frames * frame, cdouble{});
    CVector sym(n);
    const long half = static_cast<long>(spec.n_tones / 2);
    for (std::size_t f = 0; f < spec.n_frames; ++f) {
        std::fill(sym.begin(), sym.end(), cdouble{});
        for (std::size_t i = 0; i < spec.n_tones; ++i) {
            const long k = static_cast<long>(i) - half;
            const double re = 2.0 * level(rng) - (side - 1);
            const double im = 2.0 * level(rng) - (side - 1);
            const std::size_t bin = static_cast<std::size_t>((k + static_cast<long>(n)) % static_cast<long>(n));
            sym[bin] = {re, im};
        }
        fft_inplace(sym, true);

        const std::size_t start = f * frame;
        const std::size_t ext_len = cp + n + t;
        for (std::size_t i = 0; i < ext_len; ++i) {
            const std::size_t pos = start + i;
            if (pos >= out.size())
                break;
            cdouble v = sym[(i + n - cp % n) % n];
            if (i < t)
                v *= ramp[i];
            else if (i >= cp + n)
                v *= 1.0 - ramp[i - cp - n];
            out[pos] += v;
        }
    }

    const double p = mean_power(out);
    const double g = 1.0 / std::sqrt(p);
    for (auto &s : out)
        s *= g;
    return {std::move(out), sample_rate};
}

CVector fir_convolve(const CVector &x, const CVector &taps) {
    require(!taps.empty(), "FIR taps must not be empty");
    const std::size_t nx = x.size();
    const std::size_t nh = taps.size();
    CVector y(nx, cdouble{});
    for (std::size_t n = 0; n < nx; ++n) {
        cdouble acc{};
        const std::size_t kmax = std::min(nh, n + 1);
        for (std::size_t k = 0; k < kmax; ++k)
            acc += taps[k] * x[n - k];
        y[n] = acc;
    }
    return y;
}

ComplexBasebandSignal fir_convolve(const ComplexBasebandSignal &x, const CVector &taps) {
    return {fir_convolve(x.samples(), taps), x.sample_rate()};
}

} // namespace fdsim
