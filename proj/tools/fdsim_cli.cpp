// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors
//
// fdsim: batch front end for the impairment simulator and cancellers.
//
//   fdsim tone-test --preset fig5_m10dbm --out runs/fig5
//   fdsim sweep     --preset fig8_40db --powers -10:22:2 --methods linear,joint --out runs/fig8
//   fdsim budget    --tx-power 20
//   fdsim spectrum  --input runs/fig5/received.iq --out runs/spec
//
// Failures print one line to stderr: error code=<code> key=<key> msg="<text>"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "fdsim/error.hpp"
#include "fdsim/harness.hpp"
#include "fdsim/iq_file.hpp"

using namespace fdsim;

namespace {

struct Common {
    std::string config;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string out = "fdsim_out";
};

void add_common(CLI::App *sub, Common &c) {
    sub->add_option("--config", c.config, "scenario JSON file");
    sub->add_option("--preset", c.preset, "named scenario from the preset directory");
    sub->add_option("--seed", c.seed, "master seed (overrides the scenario)");
    sub->add_option("--out", c.out, "output directory");
}

Scenario resolve(const Common &c, std::string &source) {
    if (!c.config.empty() && !c.preset.empty())
        throw Error("invalid_argument", "use either --config or --preset", "config");
    Scenario s;
    if (!c.config.empty()) {
        source = c.config;
        s = load_scenario(c.config);
    } else if (!c.preset.empty()) {
        source = preset_path(c.preset);
        s = load_scenario(source);
    } else {
        source = "";
    }
    if (c.seed)
        s.seed = *c.seed;
    return s;
}

std::string escape(std::string s) {
    for (auto &ch : s)
        if (ch == '"' || ch == '\n')
            ch = '\'';
    return s;
}

int report_error(const std::string &code, const std::string &key, const std::string &msg) {
    std::cerr << "error code=" << code << " key=" << (key.empty() ? "-" : key) << " msg=\"" << escape(msg) << "\"\n";
    return 2;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Full-duplex impairment simulator and SI cancellation harness"};
    app.require_subcommand(1);

    Common tone_c, sweep_c, spec_c;
    std::optional<double> tone_freq, tone_power;

    auto *tone = app.add_subcommand("tone-test", "one-tone spectrum and harmonic check");
    add_common(tone, tone_c);
    tone->add_option("--freq", tone_freq, "tone frequency in Hz (must sit on the FFT grid)");
    tone->add_option("--tx-power", tone_power, "transmit power in dBm");

    auto *sw = app.add_subcommand("sweep", "canceller comparison over transmit power");
    add_common(sw, sweep_c);
    std::string powers, methods;
    sw->add_option("--powers", powers, "a:b:step or comma list, dBm");
    sw->add_option("--methods", methods, "comma list of methods");

    auto *bud = app.add_subcommand("budget", "analog suppression budget");
    BudgetInput bin;
    std::string bud_out;
    bud->add_option("--tx-power", bin.tx_power_dbm, "transmit power in dBm")->capture_default_str();
    bud->add_option("--noise-floor", bin.noise_floor_dbm, "receiver noise floor in dBm")->capture_default_str();
    bud->add_option("--papr", bin.papr_headroom_db, "PAPR headroom in dB")->capture_default_str();
    bud->add_option("--adc-span", bin.adc_dynamic_range_db, "ADC dynamic range in dB")->capture_default_str();
    bud->add_option("--out", bud_out, "also write budget.csv here");

    auto *spc = app.add_subcommand("spectrum", "Welch spectrum of an IQ capture");
    std::string input;
    std::size_t nfft = 16384, averaging = 0;
    spc->add_option("--input", input, "IQ file (with .hdr sidecar)")->required();
    spc->add_option("--nfft", nfft, "FFT length")->capture_default_str();
    spc->add_option("--averaging", averaging, "segments to average, 0 = all")->capture_default_str();
    spc->add_option("--out", spec_c.out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        return report_error("usage", "", e.what());
    }

    try {
        if (*tone) {
            std::string source;
            Scenario s = resolve(tone_c, source);
            if (tone_freq)
                s.tone_test.freq_hz = *tone_freq;
            if (tone_power)
                s.impairments.tx_power_dbm = *tone_power;
            ExperimentManifest m{"tone-test", s.name, source, s.seed, tone_c.out, {s.impairments.tx_power_dbm}, {}};
            const auto res = run_tone_test(s, m);
            std::printf("tone-test %s: image=%s floor=%.1f dBc\n", s.name.c_str(),
                        res.harmonics.iq_image_detected ? "yes" : "no", res.harmonics.floor_dbc);
            for (const auto &c : res.harmonics.orders)
                std::printf("  m=%d %s\n", c.m, c.pass ? "pass" : "fail");
        } else if (*sw) {
            std::string source;
            Scenario s = resolve(sweep_c, source);
            if (!powers.empty())
                s.sweep.powers_dbm = parse_power_range(powers);
            if (sw->count("--methods")) {
                s.sweep.methods = split_list(methods);
                if (s.sweep.methods.empty())
                    throw Error("invalid_argument", "method list is empty", "methods");
            }
            for (const auto &name : s.sweep.methods)
                (void)method_from_name(name, s.sweep);
            ExperimentManifest m{"sweep", s.name, source, s.seed, sweep_c.out, s.sweep.powers_dbm, s.sweep.methods};
            const auto rows = run_sweep(s, m);
            write_suppression_csv(std::cout, rows);
        } else if (*bud) {
            const auto r = suppression_budget(bin);
            std::ostringstream os;
            write_budget_csv(os, r);
            std::cout << os.str();
            if (!bud_out.empty()) {
                ensure_output_dir(bud_out);
                write_file_atomic((std::filesystem::path(bud_out) / "budget.csv").string(), os.str());
            }
        } else if (*spc) {
            const auto x = read_iq_file(input);
            const auto sp = spectrum(x, nfft, averaging, Window::Hann);
            ensure_output_dir(spec_c.out);
            std::ostringstream os;
            write_spectrum_csv(os, sp);
            write_file_atomic((std::filesystem::path(spec_c.out) / "spectrum.csv").string(), os.str());
            std::printf("spectrum: %zu bins, rbw %.1f Hz, power %.2f dBFS\n", sp.power_db.size(), sp.resolution_bw_hz,
                        power_db(x));
        }
    } catch (const Error &e) {
        return report_error(e.code(), e.key(), e.what());
    } catch (const std::exception &e) {
        return report_error("internal", "", e.what());
    }
    return 0;
}
