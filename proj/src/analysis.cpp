// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fdsim/error.hpp"

namespace fdsim {

HarmonicPrediction predict_harmonics(int m, double f_hz) {
    require(m >= 1, "predict_harmonics: order m must be >= 1");
    HarmonicPrediction p;
    p.m = m;
    if (m % 2 == 1) {
        const int sign = ((m - 1) / 2) % 2 == 0 ? 1 : -1;
        p.freqs_hz = {sign * m * f_hz};
    } else {
        p.freqs_hz = {-m * f_hz, m * f_hz};
        p.equal_power = true;
    }
    return p;
}

bool HarmonicReport::all_pass() const {
    return std::all_of(orders.begin(), orders.end(), [](const HarmonicCheck &c) { return c.pass; });
}

HarmonicReport verify_harmonics(const Spectrum &s, double f_hz, int m_max, const HarmonicCheckOptions &opt) {
    require(m_max >= 1, "verify_harmonics: m_max must be >= 1");
    require(f_hz != 0.0, "verify_harmonics: tone frequency must be nonzero");
    const double k = f_hz / s.bin_spacing_hz;
    require(std::abs(k - std::round(k)) < 1e-6,
            "verify_harmonics: tone frequency is not on the bin grid (place the tone coherently)");
    const double top = s.bin_freqs_hz.back();
    require(std::abs(m_max * f_hz) <= top, "verify_harmonics: m_max * f exceeds the spectrum span");

    std::vector<double> sorted = s.power_db;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double floor_abs = sorted[sorted.size() / 2];
    const double ref = s.power_at(f_hz);

    HarmonicReport rep;
    rep.floor_dbc = floor_abs - ref;
    const double at_floor = rep.floor_dbc + opt.floor_margin_db;
    auto dbc = [&](double f) { return s.power_at(f) - ref; };

    for (int m = 1; m <= m_max; ++m) {
        const HarmonicPrediction p = predict_harmonics(m, f_hz);
        HarmonicCheck c;
        c.m = m;
        c.predicted_freqs_hz = p.freqs_hz;
        for (double f : p.freqs_hz)
            c.measured_dbc.push_back(dbc(f));
        if (m % 2 == 1) {
            const double cf = -p.freqs_hz[0];
            c.counterpart_freqs_hz = {cf};
            c.counterpart_dbc = {dbc(cf)};
            c.predicted_present = c.measured_dbc[0] > at_floor;
            c.counterpart_at_floor = c.counterpart_dbc[0] <= at_floor;
            c.pass = c.counterpart_at_floor || c.measured_dbc[0] - c.counterpart_dbc[0] >= opt.margin_db;
            if (m == 1 && !c.counterpart_at_floor) {
                rep.iq_image_detected = true;
                rep.image_dbc = c.counterpart_dbc[0];
            }
        } else {
            // Both signs are predicted; each is the other's counterpart.
            c.counterpart_freqs_hz = {p.freqs_hz[1], p.freqs_hz[0]};
            c.counterpart_dbc = {c.measured_dbc[1], c.measured_dbc[0]};
            const bool lo = c.measured_dbc[0] <= at_floor;
            const bool hi = c.measured_dbc[1] <= at_floor;
            c.predicted_present = !lo || !hi;
            c.counterpart_at_floor = lo && hi;
            c.pass = (lo && hi) || std::abs(c.measured_dbc[0] - c.measured_dbc[1]) <= opt.even_tolerance_db;
        }
        rep.orders.push_back(std::move(c));
    }
    return rep;
}

namespace {

std::string join(const std::vector<double> &v, const char *fmt) {
    std::string out;
    char buf[48];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof buf, fmt, v[i]);
        if (i)
            out += ';';
        out += buf;
    }
    return out;
}

} // namespace

void write_harmonics_csv(std::ostream &os, const HarmonicReport &rep) {
    os << "m,predicted_freqs_hz,measured_dbc,counterpart_dbc,pass\n";
    for (const auto &c : rep.orders) {
        os << c.m << ',' << join(c.predicted_freqs_hz, "%.3f") << ',' << join(c.measured_dbc, "%.3f") << ','
           << join(c.counterpart_dbc, "%.3f") << ',' << (c.pass ? "true" : "false") << '\n';
    }
}

double skirt_peak_dbc(const Spectrum &s, double f_hz, std::size_t min_offset_bins, std::size_t max_offset_bins) {
    require(min_offset_bins >= 1 && max_offset_bins >= min_offset_bins, "skirt: invalid offset range");
    const std::size_t c = s.nearest_bin(f_hz);
    require(c >= max_offset_bins && c + max_offset_bins < s.power_db.size(), "skirt: offset range leaves the spectrum");
    double peak = -HUGE_VAL;
    for (std::size_t k = min_offset_bins; k <= max_offset_bins; ++k)
        peak = std::max({peak, s.power_db[c - k], s.power_db[c + k]});
    return peak - s.power_db[c];
}

BudgetResult suppression_budget(const BudgetInput &b) {
    require(std::isfinite(b.tx_power_dbm) && std::isfinite(b.noise_floor_dbm) && std::isfinite(b.papr_headroom_db) &&
                std::isfinite(b.adc_dynamic_range_db),
            "budget: inputs must be finite");
    // Highest average SI level the ADC can take: its span sits on the noise floor
    // and the PAPR headroom is reserved below full scale.
    const double max_rx = b.noise_floor_dbm + b.adc_dynamic_range_db - b.papr_headroom_db;
    BudgetResult r;
    r.required_suppression_db = std::max(0.0, b.tx_power_dbm - max_rx);
    r.breakdown = {{"tx_power_dbm", b.tx_power_dbm},
                   {"noise_floor_dbm", b.noise_floor_dbm},
                   {"adc_dynamic_range_db", b.adc_dynamic_range_db},
                   {"adc_full_scale_dbm", b.noise_floor_dbm + b.adc_dynamic_range_db},
                   {"papr_headroom_db", b.papr_headroom_db},
                   {"max_rx_average_dbm", max_rx},
                   {"required_suppression_db", r.required_suppression_db}};
    return r;
}

void write_budget_csv(std::ostream &os, const BudgetResult &r) {
    os << "item,value_db\n";
    char buf[64];
    for (const auto &l : r.breakdown) {
        std::snprintf(buf, sizeof buf, "%.4f", l.value_db);
        os << l.item << ',' << buf << '\n';
    }
}

} // namespace fdsim
