// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_HARNESS_HPP
#define FDSIM_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdsim/analysis.hpp"
#include "fdsim/cancellers.hpp"
#include "fdsim/comparison.hpp"
#include "fdsim/config.hpp"
#include "fdsim/impairments.hpp"
#include "fdsim/spectrum.hpp"

namespace fdsim {

struct ToneTestSpec {
    // Odd bin of the 16384-point grid near bandwidth/8, so the tone is coherent
    // and its period spans the whole FFT window.
    double freq_hz = 1.2548828125e6;
    std::size_t n_samples = 131072;
    std::size_t n_fft = 16384;
    std::size_t averaging = 15;
    int m_max = 5;
    double margin_db = 20.0;
};

struct SweepSpec {
    OfdmFrameSpec ofdm;
    std::vector<double> powers_dbm;  // default -10..22 step 2
    std::vector<std::string> methods{"linear", "nonlinear", "nonlinear_env", "widely_linear", "joint"};
    std::size_t channel_len = 32;
    int n_max = 5;
    int m_max = 3;
    double train_fraction = 0.5;

    SweepSpec();
};

struct Scenario {
    std::string name = "custom";
    double sample_rate_hz = 80e6;
    std::uint64_t seed = 1;
    ImpairmentConfig impairments;
    ToneTestSpec tone_test;
    SweepSpec sweep;
};

Scenario scenario_from_json(const Json &j);
Json to_json(const Scenario &s);
Scenario load_scenario(const std::string &file);

std::string preset_dir();
std::string preset_path(const std::string &name);
std::vector<std::string> list_presets();

// Valid names: linear, nonlinear, nonlinear_env, widely_linear, joint.
CancellerSpec method_from_name(const std::string &name, const SweepSpec &sweep);
const std::vector<std::string> &method_names();

// "a:b:step" inclusive of b, or a comma list, or one value.
std::vector<double> parse_power_range(const std::string &text);
std::vector<std::string> split_list(const std::string &text);

struct ExperimentManifest {
    std::string command;
    std::string scenario;
    std::string config_path;
    std::uint64_t seed = 1;
    std::string output_dir;
    std::vector<double> powers_dbm;
    std::vector<std::string> methods;

    Json to_json(const Scenario &resolved) const;
};

struct ToneTestResult {
    ComplexBasebandSignal received;
    Spectrum spectrum;
    HarmonicReport harmonics;
};

// Pure computation; the writers below add the file outputs.
ToneTestResult tone_test(const Scenario &s);
ComplexBasebandSignal sweep_signal(const Scenario &s);  // OFDM at its DAC level
std::vector<SuppressionReport> sweep(const Scenario &s);

// Write <out>/spectrum.csv, harmonics.csv, received.iq(.hdr), manifest.json.
ToneTestResult run_tone_test(const Scenario &s, const ExperimentManifest &m);
// Write <out>/suppression.csv and manifest.json.
std::vector<SuppressionReport> run_sweep(const Scenario &s, const ExperimentManifest &m);

// Writes via a temporary file and rename.
void write_file_atomic(const std::string &path, const std::string &content);
void ensure_output_dir(const std::string &dir);

} // namespace fdsim

#endif
