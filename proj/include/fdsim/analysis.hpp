// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_ANALYSIS_HPP
#define FDSIM_ANALYSIS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "fdsim/spectrum.hpp"

namespace fdsim {

// Lines produced by the order-m term of a matched per-rail polynomial driven by
// a tone at f: odd m lands at m(-1)^{(m-1)/2} f, even m at -mf and +mf with equal power.
struct HarmonicPrediction {
    int m = 1;
    std::vector<double> freqs_hz;
    bool equal_power = false;
};

HarmonicPrediction predict_harmonics(int m, double f_hz);

struct HarmonicCheckOptions {
    double margin_db = 20.0;        // predicted line over its counterpart
    double floor_margin_db = 10.0;  // a bin within this of the floor counts as "at floor"
    double even_tolerance_db = 1.0; // allowed -mf / +mf imbalance
};

struct HarmonicCheck {
    int m = 1;
    std::vector<double> predicted_freqs_hz;
    std::vector<double> counterpart_freqs_hz;
    std::vector<double> measured_dbc;
    std::vector<double> counterpart_dbc;
    bool predicted_present = false;    // any predicted bin above the floor margin
    bool counterpart_at_floor = false;
    bool pass = false;
};

struct HarmonicReport {
    double floor_dbc = 0.0;  // median bin
    std::vector<HarmonicCheck> orders;
    // Line at -f above the floor: an image from IQ imbalance or mismatched DAC rails.
    bool iq_image_detected = false;
    double image_dbc = 0.0;
    bool all_pass() const;
};

// f must sit on the bin grid and m_max * |f| must stay below Nyquist.
HarmonicReport verify_harmonics(const Spectrum &s, double f_hz, int m_max, const HarmonicCheckOptions &opt = {});

void write_harmonics_csv(std::ostream &os, const HarmonicReport &rep);

// Strongest bin at offsets [min_offset, max_offset] bins on either side of the
// tone at f, in dBc. With a Hann window and a coherent tone, leakage of the
// line itself is zero from two bins out, so this reads the phase-noise skirt.
double skirt_peak_dbc(const Spectrum &s, double f_hz, std::size_t min_offset_bins = 2,
                      std::size_t max_offset_bins = 64);

struct BudgetInput {
    double tx_power_dbm = 20.0;
    double noise_floor_dbm = -90.0;
    double papr_headroom_db = 10.0;
    double adc_dynamic_range_db = 70.0;
};

struct BudgetLine {
    std::string item;
    double value_db;
};

struct BudgetResult {
    double required_suppression_db = 0.0;
    std::vector<BudgetLine> breakdown;
};

// required = tx - (noise_floor + adc_span - papr_headroom), floored at 0.
BudgetResult suppression_budget(const BudgetInput &b);
void write_budget_csv(std::ostream &os, const BudgetResult &r);

} // namespace fdsim

#endif
