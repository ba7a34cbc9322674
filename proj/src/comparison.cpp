// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fdsim/error.hpp"
#include "fdsim/rng.hpp"

namespace fdsim {

namespace {

struct PowerPoint {
    double power_dbm;
    ComplexBasebandSignal r;
    std::vector<double> frame_noise;  // realized thermal + quantization power per test frame
    double floor_dbfs;
};

struct Frames {
    std::size_t len, total, train;
};

Frames frame_layout(const ComplexBasebandSignal &x, const TrainTestSplit &split) {
    require(split.frame_length >= 1, "split: frame_length must be >= 1");
    require(split.train_fraction > 0.0 && split.train_fraction < 1.0, "split: train_fraction must lie in (0, 1)");
    const std::size_t total = x.size() / split.frame_length;
    require(total >= 2, "split: need at least two frames");
    std::size_t train = static_cast<std::size_t>(std::floor(split.train_fraction * static_cast<double>(total)));
    train = std::clamp<std::size_t>(train, 1, total - 1);
    return {split.frame_length, total, train};
}

double segment_power(const CVector &v, std::size_t start, std::size_t len) {
    double acc = 0.0;
    for (std::size_t i = start; i < start + len; ++i)
        acc += std::norm(v[i]);
    return acc / static_cast<double>(len);
}

PowerPoint simulate_point(const ComplexBasebandSignal &x, ImpairmentConfig cfg, double p, const Frames &fr,
                          std::uint64_t seed) {
    cfg.tx_power_dbm = p;
    ReceivedSignal rs = simulate_received(x, cfg, power_seed(seed, p));
    CVector noise(rs.r.size());
    for (std::size_t i = 0; i < noise.size(); ++i)
        noise[i] = rs.r[i] - rs.after_rx_iq[i];
    PowerPoint pt{p, std::move(rs.r), {}, 0.0};
    double total = 0.0;
    for (std::size_t f = fr.train; f < fr.total; ++f) {
        const double np = segment_power(noise, f * fr.len, fr.len);
        pt.frame_noise.push_back(np);
        total += np;
    }
    pt.floor_dbfs = db10(total / static_cast<double>(pt.frame_noise.size()));
    return pt;
}

SuppressionReport evaluate(const BasisSet &bases, const LsFit &fit, const CancellerSpec &spec, const PowerPoint &pt,
                           const Frames &fr) {
    const ComplexBasebandSignal e = cancel(pt.r, bases, fit);
    std::vector<double> db;
    for (std::size_t f = fr.train; f < fr.total; ++f) {
        const double rp = segment_power(e.samples(), f * fr.len, fr.len);
        db.push_back(10.0 * std::log10(rp / pt.frame_noise[f - fr.train]));
    }
    double mean = 0.0;
    for (double v : db)
        mean += v;
    mean /= static_cast<double>(db.size());
    double var = 0.0;
    for (double v : db)
        var += (v - mean) * (v - mean);
    var = db.size() > 1 ? var / static_cast<double>(db.size() - 1) : 0.0;

    SuppressionReport rep;
    rep.method = spec.label();
    rep.tx_power_dbm = pt.power_dbm;
    rep.mean_residual_above_noise_db = mean;
    rep.std_residual_above_noise_db = std::sqrt(var);
    rep.apparent_noise_floor_dbfs = pt.floor_dbfs;
    rep.test_frames = db.size();
    rep.condition = fit.condition_diag;
    return rep;
}

} // namespace

std::uint64_t power_seed(std::uint64_t seed, double power_dbm) {
    char key[48];
    std::snprintf(key, sizeof key, "sweep/power=%.6f", power_dbm);
    return derive_seed(seed, key);
}

std::vector<SuppressionReport> run_sweep(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg,
                                         const std::vector<double> &powers_dbm,
                                         const std::vector<CancellerSpec> &specs, const TrainTestSplit &split,
                                         std::uint64_t seed) {
    require(!specs.empty(), "sweep: method list is empty");
    require(!powers_dbm.empty(), "sweep: power list is empty");
    for (const auto &s : specs)
        s.validate();
    const Frames fr = frame_layout(x, split);

    std::vector<PowerPoint> points;
    points.reserve(powers_dbm.size());
    for (double p : powers_dbm)
        points.push_back(simulate_point(x, cfg, p, fr, seed));

    std::vector<std::vector<SuppressionReport>> grid(points.size());
    for (const auto &spec : specs) {
        const BasisSet bases = build_basis(x, spec);
        const BasisFitter fitter(bases, spec.channel_len, fr.train * fr.len);
        for (std::size_t i = 0; i < points.size(); ++i)
            grid[i].push_back(evaluate(bases, fitter.fit(points[i].r), spec, points[i], fr));
    }
    std::vector<SuppressionReport> out;
    for (auto &row : grid)
        for (auto &r : row)
            out.push_back(std::move(r));
    return out;
}

std::vector<SuppressionReport> run_comparison(const ComplexBasebandSignal &x, const ImpairmentConfig &cfg,
                                              const std::vector<CancellerSpec> &specs, const TrainTestSplit &split,
                                              std::uint64_t seed) {
    return run_sweep(x, cfg, {cfg.tx_power_dbm}, specs, split, seed);
}

void write_suppression_csv(std::ostream &os, const std::vector<SuppressionReport> &rows) {
    os << "tx_power_dbm,method,mean_residual_above_noise_db,std_db,apparent_floor_dbfs\n";
    char line[160];
    for (const auto &r : rows) {
        std::snprintf(line, sizeof line, "%.2f,%s,%.4f,%.4f,%.4f\n", r.tx_power_dbm, r.method.c_str(),
                      r.mean_residual_above_noise_db, r.std_residual_above_noise_db, r.apparent_noise_floor_dbfs);
        os << line;
    }
}

} // namespace fdsim
