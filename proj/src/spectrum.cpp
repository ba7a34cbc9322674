// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "fdsim/error.hpp"
#include "fdsim/fft.hpp"

namespace fdsim {

std::size_t Spectrum::nearest_bin(double freq_hz) const {
    require(!bin_freqs_hz.empty() && bin_spacing_hz > 0.0, "empty spectrum");
    const long half = static_cast<long>(bin_freqs_hz.size() / 2);
    long idx = std::lround(freq_hz / bin_spacing_hz) + half;
    idx = std::clamp<long>(idx, 0, static_cast<long>(bin_freqs_hz.size()) - 1);
    return static_cast<std::size_t>(idx);
}

Spectrum spectrum(const ComplexBasebandSignal &x, std::size_t n_fft, std::size_t averaging, Window window) {
    require(n_fft >= 2, "n_fft must be at least 2");
    require(n_fft <= x.size(), "n_fft (" + std::to_string(n_fft) + ") exceeds signal length (" +
                                   std::to_string(x.size()) + ")");

    std::vector<double> w(n_fft, 1.0);
    if (window == Window::Hann) {
        for (std::size_t i = 0; i < n_fft; ++i)
            w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_fft));
    }
    double sum_w = 0.0, sum_w2 = 0.0;
    for (double v : w) {
        sum_w += v;
        sum_w2 += v * v;
    }

    const std::size_t hop = window == Window::Hann ? n_fft / 2 : n_fft;
    const std::size_t available = 1 + (x.size() - n_fft) / hop;
    const std::size_t segs = averaging == 0 ? available : std::min(averaging, available);

    std::vector<double> acc(n_fft, 0.0);
    CVector buf(n_fft);
    const auto &s = x.samples();
    for (std::size_t k = 0; k < segs; ++k) {
        const std::size_t off = k * hop;
        for (std::size_t i = 0; i < n_fft; ++i)
            buf[i] = s[off + i] * w[i];
        fft_inplace(buf);
        for (std::size_t i = 0; i < n_fft; ++i)
            acc[i] += std::norm(buf[i]);
    }

    const double fs = x.sample_rate();
    const double scale = 1.0 / (static_cast<double>(segs) * sum_w * sum_w);
    const long half = static_cast<long>(n_fft / 2);
    Spectrum out;
    out.bin_spacing_hz = fs / static_cast<double>(n_fft);
    out.resolution_bw_hz = fs * sum_w2 / (sum_w * sum_w);
    // Bin -n/2 (Nyquist) is dropped for even n_fft so the grid is symmetric.
    const long lo = (n_fft % 2 == 0) ? -half + 1 : -half;
    for (long k = lo; k <= half - ((n_fft % 2 == 0) ? 1 : 0); ++k) {
        const std::size_t idx = static_cast<std::size_t>((k + static_cast<long>(n_fft)) % static_cast<long>(n_fft));
        const double p = acc[idx] * scale;
        out.bin_freqs_hz.push_back(static_cast<double>(k) * out.bin_spacing_hz);
        out.power_db.push_back(p > 0.0 ? std::max(10.0 * std::log10(p), kSpectrumFloorDb) : kSpectrumFloorDb);
    }
    return out;
}

double integrated_power(const Spectrum &s, double f_lo, double f_hi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.power_db.size(); ++i) {
        if (s.bin_freqs_hz[i] < f_lo || s.bin_freqs_hz[i] > f_hi)
            continue;
        if (s.power_db[i] <= kSpectrumFloorDb)
            continue;
        acc += std::pow(10.0, s.power_db[i] / 10.0);
    }
    return acc * s.bin_spacing_hz / s.resolution_bw_hz;
}

double integrated_power(const Spectrum &s) {
    return integrated_power(s, -HUGE_VAL, HUGE_VAL);
}

void write_spectrum_csv(std::ostream &os, const Spectrum &s) {
    os << "freq_hz,power_db\n";
    char line[96];
    for (std::size_t i = 0; i < s.power_db.size(); ++i) {
        std::snprintf(line, sizeof line, "%.3f,%.4f\n", s.bin_freqs_hz[i], s.power_db[i]);
        os << line;
    }
}

} // namespace fdsim
