// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_IMPAIRMENTS_HPP
#define FDSIM_IMPAIRMENTS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "fdsim/signal.hpp"

namespace fdsim {

// Per-rail Taylor polynomial: I' = sum_m a_i[m-1] I^m, Q' = sum_m a_q[m-1] Q^m.
struct DacNonlinearity {
    std::vector<double> coeffs_i{1.0};
    std::vector<double> coeffs_q{1.0};

    std::size_t m_max() const { return coeffs_i.size(); }
    void validate() const;
};

// Widely-linear mixer model y = gamma * x + delta * conj(x).
struct IqImbalance {
    CVector gamma{cdouble{1.0, 0.0}};
    CVector delta{cdouble{0.0, 0.0}};

    void validate() const;
    // 10log10(|delta|^2 / |gamma|^2) over tap energies, -inf when delta = 0.
    double image_rejection_db() const;
};

// Wiener phase noise. The residual rotation applied to the received SI is
// theta[n] = phi_tx[n] - phi_rx[n - delay]; a shared oscillator uses phi_rx = phi_tx.
struct PhaseNoiseSpec {
    double linewidth_hz = 0.0;
    bool shared_oscillator = true;
    std::size_t delay_samples = 0;

    void validate() const;
};

// Odd-order PA polynomial, coeffs_odd = {b1, b3, b5, ...}. Applied in the
// baseband-equivalent form y = sum b'_n u|u|^{n-1}, b'_n = b_n C(n,(n-1)/2) / 2^{n-1},
// with u the PA input normalized to input_ref_dbm.
struct PaNonlinearity {
    std::vector<double> coeffs_odd{1.0};
    double input_ref_dbm = 30.0;

    std::size_t n_max() const { return 2 * coeffs_odd.size() - 1; }
    void validate() const;
};

struct ChannelAndReceiver {
    CVector h_si{cdouble{1.0, 0.0}};
    double analog_suppression_db = 0.0;
    std::optional<double> thermal_noise_dbfs = -90.0;  // empty = noiseless
    int adc_bits = 14;
    double adc_full_scale = 3.1622776601683795;  // per-rail clip level; x RMS when adc_agc
    bool adc_agc = true;

    void validate() const;
};

// Receiver-side values are in sqrt(mW), so 0 dBFS at the ADC input reads as 0 dBm.
struct ImpairmentConfig {
    DacNonlinearity dac;
    IqImbalance tx_iq;
    IqImbalance rx_iq;
    PhaseNoiseSpec pn;
    PaNonlinearity pa;
    ChannelAndReceiver chan;
    double tx_power_dbm = 0.0;
    double tx_ref_dbfs = -12.0;  // digital level that produces tx_power_dbm at the PA output

    void validate() const;
    double tx_gain() const;  // linear amplitude gain from digital to sqrt(mW)
};

ComplexBasebandSignal apply_dac(const ComplexBasebandSignal &x, const DacNonlinearity &dac);
ComplexBasebandSignal apply_iq(const ComplexBasebandSignal &x, const IqImbalance &iq);
ComplexBasebandSignal apply_phase_noise(const ComplexBasebandSignal &x, const PhaseNoiseSpec &pn, std::uint64_t seed);
// x in sqrt(mW).
ComplexBasebandSignal apply_pa(const ComplexBasebandSignal &x, const PaNonlinearity &pa);

// Residual phase rotation theta[n] used by apply_phase_noise.
std::vector<double> phase_noise_rotation(std::size_t n, const PhaseNoiseSpec &pn, double sample_rate,
                                         std::uint64_t seed);

struct ReceiverOutput {
    ComplexBasebandSignal signal;        // ADC output
    ComplexBasebandSignal noiseless;     // after RX IQ, before thermal noise and ADC
    std::size_t clipped_samples = 0;     // samples with either rail at the clip level
    double clip_level = 0.0;             // per rail
    double quantization_error_power = 0.0;
    double thermal_noise_power = 0.0;    // realized
};

ReceiverOutput apply_channel_and_receiver(const ComplexBasebandSignal &x, const ChannelAndReceiver &chan,
                                          const IqImbalance &rx_iq, std::uint64_t seed);

struct ReceivedSignal {
    ComplexBasebandSignal r;
    // Stage outputs in chain order.
    ComplexBasebandSignal after_dac;
    ComplexBasebandSignal after_tx_iq;
    ComplexBasebandSignal after_phase_noise;
    ComplexBasebandSignal after_pa;  // sqrt(mW)
    ComplexBasebandSignal after_rx_iq;
    std::size_t clipped_samples = 0;
    double clip_level = 0.0;
    double quantization_error_power = 0.0;
    double thermal_noise_power = 0.0;
};

// x is the digital baseband at its DAC level (full scale 1.0).
ReceivedSignal simulate_received(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg, std::uint64_t seed);

} // namespace fdsim

#endif
