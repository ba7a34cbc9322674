// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/impairments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fdsim/error.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

namespace {

bool finite_all(const CVector &v) {
    return std::all_of(v.begin(), v.end(), [](const cdouble &c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double tap_energy(const CVector &v) {
    double e = 0.0;
    for (const auto &c : v)
        e += std::norm(c);
    return e;
}

double poly(const std::vector<double> &a, double v) {
    // a[0] v + a[1] v^2 + ... via Horner on v * (a0 + v (a1 + ...))
    double acc = 0.0;
    for (std::size_t i = a.size(); i-- > 0;)
        acc = acc * v + a[i];
    return acc * v;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

void DacNonlinearity::validate() const {
    require(!coeffs_i.empty() && !coeffs_q.empty(), "dac: m_max must be at least 1");
    require(coeffs_i.size() == coeffs_q.size(), "dac: coeffs_i and coeffs_q must have equal length");
    require(coeffs_i[0] != 0.0 && coeffs_q[0] != 0.0, "dac: linear coefficients must be nonzero");
    for (std::size_t i = 0; i < coeffs_i.size(); ++i)
        require(std::isfinite(coeffs_i[i]) && std::isfinite(coeffs_q[i]), "dac: coefficients must be finite");
}

void IqImbalance::validate() const {
    require(!gamma.empty() && !delta.empty(), "iq: gamma and delta need at least one tap");
    require(finite_all(gamma) && finite_all(delta), "iq: taps must be finite");
    require(tap_energy(gamma) > 0.0, "iq: gamma must not be all-zero");
}

double IqImbalance::image_rejection_db() const { return db10(tap_energy(delta) / tap_energy(gamma)); }

void PhaseNoiseSpec::validate() const {
    require(std::isfinite(linewidth_hz) && linewidth_hz >= 0.0, "phase_noise: linewidth_hz must be >= 0");
}

void PaNonlinearity::validate() const {
    require(!coeffs_odd.empty(), "pa: coeffs_odd must contain b1");
    require(coeffs_odd[0] > 0.0, "pa: b1 must be positive");
    for (double b : coeffs_odd)
        require(std::isfinite(b), "pa: coefficients must be finite");
    require(std::isfinite(input_ref_dbm), "pa: input_ref_dbm must be finite");
}

void ChannelAndReceiver::validate() const {
    require(!h_si.empty(), "channel: h_si needs at least one tap");
    require(finite_all(h_si), "channel: h_si must be finite");
    require(std::isfinite(analog_suppression_db) && analog_suppression_db >= 0.0,
            "channel: analog_suppression_db must be >= 0");
    if (thermal_noise_dbfs)
        require(std::isfinite(*thermal_noise_dbfs), "channel: thermal_noise_dbfs must be finite or null");
    require(adc_bits >= 4 && adc_bits <= 24, "channel: adc_bits must lie in [4, 24]");
    require(std::isfinite(adc_full_scale) && adc_full_scale > 0.0, "channel: adc_full_scale must be positive");
}

void ImpairmentConfig::validate() const {
    dac.validate();
    tx_iq.validate();
    rx_iq.validate();
    pn.validate();
    pa.validate();
    chan.validate();
    require(tx_power_dbm >= -10.0 && tx_power_dbm <= 22.0, "tx_power_dbm must lie in [-10, 22]");
    require(std::isfinite(tx_ref_dbfs) && tx_ref_dbfs <= 0.0, "tx_ref_dbfs must be <= 0");
}

double ImpairmentConfig::tx_gain() const { return std::pow(10.0, (tx_power_dbm - tx_ref_dbfs) / 20.0); }

ComplexBasebandSignal apply_dac(const ComplexBasebandSignal &x, const DacNonlinearity &dac) {
    dac.validate();
    CVector out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double i = x[n].real(), q = x[n].imag();
        require(std::abs(i) <= 1.0 && std::abs(q) <= 1.0, "dac: input exceeds full scale");
        out[n] = {poly(dac.coeffs_i, i), poly(dac.coeffs_q, q)};
    }
    return {std::move(out), x.sample_rate()};
}

ComplexBasebandSignal apply_iq(const ComplexBasebandSignal &x, const IqImbalance &iq) {
    iq.validate();
    CVector xc(x.size());
    std::transform(x.samples().begin(), x.samples().end(), xc.begin(), [](const cdouble &c) { return std::conj(c); });
    CVector a = fir_convolve(x.samples(), iq.gamma);
    const CVector b = fir_convolve(xc, iq.delta);
    for (std::size_t n = 0; n < a.size(); ++n)
        a[n] += b[n];
    return {std::move(a), x.sample_rate()};
}

std::vector<double> phase_noise_rotation(std::size_t n, const PhaseNoiseSpec &pn, double sample_rate,
                                         std::uint64_t seed) {
    pn.validate();
    std::vector<double> theta(n, 0.0);
    if (pn.linewidth_hz == 0.0 || (pn.shared_oscillator && pn.delay_samples == 0))
        return theta;

    const double sigma = std::sqrt(2.0 * std::numbers::pi * pn.linewidth_hz / sample_rate);
    const std::size_t d = pn.delay_samples;
    // Paths indexed from -d so that phi[n - d] exists for n >= 0; stored at offset d.
    auto walk = [&](std::string_view name) {
        Rng rng = make_rng(seed, name);
        std::normal_distribution<double> step(0.0, sigma);
        std::vector<double> phi(n + d);
        phi[0] = 0.0;
        for (std::size_t k = 1; k < phi.size(); ++k)
            phi[k] = phi[k - 1] + step(rng);
        return phi;
    };
    const std::vector<double> tx = walk("pn/tx");
    const std::vector<double> rx = pn.shared_oscillator ? tx : walk("pn/rx");
    for (std::size_t k = 0; k < n; ++k)
        theta[k] = tx[k + d] - rx[k];
    return theta;
}

ComplexBasebandSignal apply_phase_noise(const ComplexBasebandSignal &x, const PhaseNoiseSpec &pn, std::uint64_t seed) {
    const std::vector<double> theta = phase_noise_rotation(x.size(), pn, x.sample_rate(), seed);
    CVector out(x.samples());
    for (std::size_t n = 0; n < out.size(); ++n)
        if (theta[n] != 0.0)
            out[n] *= std::polar(1.0, theta[n]);
    return {std::move(out), x.sample_rate()};
}

ComplexBasebandSignal apply_pa(const ComplexBasebandSignal &x, const PaNonlinearity &pa) {
    pa.validate();
    std::vector<double> bp(pa.coeffs_odd.size());
    for (std::size_t i = 0; i < bp.size(); ++i) {
        const int n = static_cast<int>(2 * i + 1);
        bp[i] = pa.coeffs_odd[i] * binom(n, (n - 1) / 2) / std::pow(2.0, n - 1);
    }
    const double ref = std::pow(10.0, pa.input_ref_dbm / 20.0);
    CVector out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        const cdouble u = x[n] / ref;
        const double e2 = std::norm(u);
        // sum_i b'_i |u|^{2i}
        double g = 0.0;
        for (std::size_t i = bp.size(); i-- > 0;)
            g = g * e2 + bp[i];
        out[n] = ref * g * u;
    }
    return {std::move(out), x.sample_rate()};
}

ReceiverOutput apply_channel_and_receiver(const ComplexBasebandSignal &x, const ChannelAndReceiver &chan,
                                          const IqImbalance &rx_iq, std::uint64_t seed) {
    chan.validate();
    rx_iq.validate();
    const double att = std::pow(10.0, -chan.analog_suppression_db / 20.0);
    CVector s(x.samples());
    for (auto &v : s)
        v *= att;
    ComplexBasebandSignal clean = apply_iq(ComplexBasebandSignal(fir_convolve(s, chan.h_si), x.sample_rate()), rx_iq);

    CVector in(clean.samples());
    double thermal = 0.0;
    if (chan.thermal_noise_dbfs) {
        Rng rng = make_rng(seed, "rx/thermal");
        std::normal_distribution<double> g(0.0, std::sqrt(std::pow(10.0, *chan.thermal_noise_dbfs / 10.0) / 2.0));
        CVector noise(in.size());
        for (auto &v : noise) {
            const double re = g(rng);
            const double im = g(rng);
            v = {re, im};
        }
        thermal = mean_power(noise);
        for (std::size_t n = 0; n < in.size(); ++n)
            in[n] += noise[n];
    }

    double clip = chan.adc_full_scale;
    if (chan.adc_agc) {
        const double rms = std::sqrt(mean_power(in));
        if (rms > 0.0)
            clip *= rms;
    }
    const double levels = std::ldexp(1.0, chan.adc_bits);
    const double step = 2.0 * clip / levels;
    const double kmin = -levels / 2.0, kmax = levels / 2.0 - 1.0;
    std::size_t clipped = 0;
    auto quant = [&](double v, bool &c) {
        double k = std::floor(v / step);
        if (k < kmin) {
            k = kmin;
            c = true;
        } else if (k > kmax) {
            k = kmax;
            c = true;
        }
        return step * (k + 0.5);
    };
    CVector out(in.size());
    double qerr = 0.0;
    for (std::size_t n = 0; n < in.size(); ++n) {
        bool c = false;
        out[n] = {quant(in[n].real(), c), quant(in[n].imag(), c)};
        clipped += c ? 1 : 0;
        qerr += std::norm(out[n] - in[n]);
    }

    ReceiverOutput r{ComplexBasebandSignal(std::move(out), x.sample_rate()), std::move(clean)};
    r.clipped_samples = clipped;
    r.clip_level = clip;
    r.quantization_error_power = qerr / static_cast<double>(in.size());
    r.thermal_noise_power = thermal;
    return r;
}

ReceivedSignal simulate_received(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg, std::uint64_t seed) {
    cfg.validate();
    ComplexBasebandSignal d = apply_dac(x, cfg.dac);
    ComplexBasebandSignal t = apply_iq(d, cfg.tx_iq);
    ComplexBasebandSignal p = apply_phase_noise(t, cfg.pn, derive_seed(seed, "chain/phase_noise"));
    CVector amp(p.samples());
    const double g = cfg.tx_gain();
    for (auto &v : amp)
        v *= g;
    ComplexBasebandSignal pa = apply_pa(ComplexBasebandSignal(std::move(amp), x.sample_rate()), cfg.pa);
    ReceiverOutput rx = apply_channel_and_receiver(pa, cfg.chan, cfg.rx_iq, derive_seed(seed, "chain/receiver"));
    ReceivedSignal out{std::move(rx.signal), std::move(d), std::move(t), std::move(p), std::move(pa),
                       std::move(rx.noiseless)};
    out.clipped_samples = rx.clipped_samples;
    out.clip_level = rx.clip_level;
    out.quantization_error_power = rx.quantization_error_power;
    out.thermal_noise_power = rx.thermal_noise_power;
    return out;
}

} // namespace fdsim
