// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_SPECTRUM_HPP
#define FDSIM_SPECTRUM_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fdsim/signal.hpp"

namespace fdsim {

enum class Window { Hann, Rectangular };

// Bins run from -(n_fft/2 - 1) to n_fft/2 - 1 so the grid is symmetric about DC.
// power_db is line-power calibrated: a coherent tone of power p reads 10log10(p).
struct Spectrum {
    std::vector<double> bin_freqs_hz;
    std::vector<double> power_db;
    double resolution_bw_hz = 0.0;  // equivalent noise bandwidth of the window
    double bin_spacing_hz = 0.0;

    std::size_t nearest_bin(double freq_hz) const;
    double power_at(double freq_hz) const { return power_db[nearest_bin(freq_hz)]; }
};

constexpr double kSpectrumFloorDb = -300.0;

// Welch average with 50% overlap. averaging = number of segments, 0 = all that fit.
Spectrum spectrum(const ComplexBasebandSignal &x, std::size_t n_fft, std::size_t averaging = 0,
                  Window window = Window::Hann);

// Total power implied by the spectrum (linear, same units as mean |x|^2).
double integrated_power(const Spectrum &s);
// Power inside [f_lo, f_hi].
double integrated_power(const Spectrum &s, double f_lo, double f_hi);

void write_spectrum_csv(std::ostream &os, const Spectrum &s);

} // namespace fdsim

#endif
