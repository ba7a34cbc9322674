// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors
//
// Offline calibration helper for the shipped presets.
//
//   fdsim_calibrate linewidth [preset] [target_dbc]   bisection on the oscillator linewidth
//   fdsim_calibrate sweep <preset> [powers]            print the canceller table for a preset

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fdsim/harness.hpp"

using namespace fdsim;

namespace {

double mean_skirt(Scenario s, double linewidth, int seeds) {
    s.impairments.pn.linewidth_hz = linewidth;
    double acc = 0.0;
    for (int k = 0; k < seeds; ++k) {
        s.seed = 1000 + static_cast<std::uint64_t>(k);
        const auto r = tone_test(s);
        acc += skirt_peak_dbc(r.spectrum, s.tone_test.freq_hz);
    }
    return acc / seeds;
}

int linewidth(const std::string &preset, double target) {
    const Scenario s = load_scenario(preset_path(preset));
    double lo = 0.01, hi = 100.0;
    for (int it = 0; it < 30; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double v = mean_skirt(s, mid, 8);
        std::printf("linewidth %.5f Hz -> skirt %.2f dBc\n", mid, v);
        (v > target ? hi : lo) = mid;
        if (hi / lo < 1.002)
            break;
    }
    std::printf("calibrated linewidth_hz = %.4f\n", std::sqrt(lo * hi));
    return 0;
}

int sweep_table(const std::string &preset, const std::string &powers) {
    Scenario s = load_scenario(preset_path(preset));
    if (!powers.empty())
        s.sweep.powers_dbm = parse_power_range(powers);
    const auto rows = sweep(s);
    std::printf("%6s", "P");
    for (const auto &m : s.sweep.methods)
        std::printf(" %14s", m.c_str());
    std::printf(" %10s\n", "floor");
    const std::size_t nm = s.sweep.methods.size();
    for (std::size_t i = 0; i < rows.size(); i += nm) {
        std::printf("%6.1f", rows[i].tx_power_dbm);
        for (std::size_t j = 0; j < nm; ++j)
            std::printf(" %8.2f+-%4.2f", rows[i + j].mean_residual_above_noise_db, rows[i + j].std_residual_above_noise_db);
        std::printf(" %10.2f\n", rows[i].apparent_noise_floor_dbfs);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: fdsim_calibrate linewidth [preset] [target] | sweep <preset> [powers]\n");
        return 2;
    }
    const std::string cmd = argv[1];
    try {
        if (cmd == "linewidth")
            return linewidth(argc > 2 ? argv[2] : "fig4_indep_m10dbm", argc > 3 ? std::atof(argv[3]) : -46.0);
        if (cmd == "sweep" && argc > 2)
            return sweep_table(argv[2], argc > 3 ? argv[3] : "");
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "unknown command\n");
    return 2;
}
