// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_SIGNAL_HPP
#define FDSIM_SIGNAL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fdsim {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// Uniformly sampled complex baseband sequence. Full scale is 1.0.
class ComplexBasebandSignal {
public:
    ComplexBasebandSignal(CVector samples, double sample_rate);

    const CVector &samples() const noexcept { return samples_; }
    double sample_rate() const noexcept { return fs_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const cdouble &operator[](std::size_t i) const { return samples_[i]; }

    // mean |x|^2
    double power() const;

private:
    CVector samples_;
    double fs_;
};

ComplexBasebandSignal gen_tone(double freq_hz, double amplitude, std::size_t n_samples, double sample_rate);

struct OfdmFrameSpec {
    std::size_t n_tones = 512;
    double bandwidth_hz = 10e6;
    int constellation_order = 4;
    std::size_t n_frames = 100;
    std::size_t cp_length = 256;     // samples at the output rate
    std::size_t taper_length = 256;  // raised-cosine overlap between frames, <= cp_length
    std::uint64_t seed = 1;
};

// Samples per frame (symbol plus cyclic prefix) at the given rate.
std::size_t ofdm_frame_length(const OfdmFrameSpec &spec, double sample_rate);

// One OFDM symbol per frame, unit average power over the whole signal.
ComplexBasebandSignal gen_ofdm_frames(const OfdmFrameSpec &spec, double sample_rate);

// Causal linear convolution trimmed to the input length:
// y[n] = sum_k h[k] x[n-k], x[m<0] = 0.
ComplexBasebandSignal fir_convolve(const ComplexBasebandSignal &x, const CVector &taps);
CVector fir_convolve(const CVector &x, const CVector &taps);

double power_db(const ComplexBasebandSignal &x);
double power_db(const CVector &x);
double papr_db(const ComplexBasebandSignal &x);

double mean_power(const CVector &x);
double db10(double linear);  // -inf for 0

} // namespace fdsim

#endif
