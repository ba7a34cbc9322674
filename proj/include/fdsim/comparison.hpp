// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_COMPARISON_HPP
#define FDSIM_COMPARISON_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdsim/cancellers.hpp"
#include "fdsim/impairments.hpp"

namespace fdsim {

// The first train_fraction of frames train every canceller, the rest are held out.
struct TrainTestSplit {
    std::size_t frame_length = 0;
    double train_fraction = 0.5;
};

struct SuppressionReport {
    std::string method;
    double tx_power_dbm = 0.0;
    // Residual SI plus noise over the realized thermal + quantization noise, per held-out frame.
    double mean_residual_above_noise_db = 0.0;
    double std_residual_above_noise_db = 0.0;
    double apparent_noise_floor_dbfs = 0.0;
    std::size_t test_frames = 0;
    ConditionReport condition;
};

// x is the digital baseband at its DAC level.
std::vector<SuppressionReport> run_comparison(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg,
                                              const std::vector<CancellerSpec> &specs, const TrainTestSplit &split,
                                              std::uint64_t seed);

// Same as run_comparison at every power, sharing one factorization per method.
// Rows are ordered by power, then by the order of specs.
std::vector<SuppressionReport> run_sweep(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg,
                                         const std::vector<double> &powers_dbm,
                                         const std::vector<CancellerSpec> &specs, const TrainTestSplit &split,
                                         std::uint64_t seed);

// Seed used for the chain at one grid power.
std::uint64_t power_seed(std::uint64_t seed, double power_dbm);

void write_suppression_csv(std::ostream &os, const std::vector<SuppressionReport> &rows);

} // namespace fdsim

#endif
