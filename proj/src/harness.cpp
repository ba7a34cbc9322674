// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fdsim/error.hpp"
#include "fdsim/iq_file.hpp"
#include "fdsim/rng.hpp"

namespace fs = std::filesystem;

namespace fdsim {

SweepSpec::SweepSpec() {
    for (int p = -10; p <= 22; p += 2)
        powers_dbm.push_back(p);
}

namespace {

using namespace cfg;

std::size_t get_count(const Json &j, const std::string &path) {
    const auto v = get_int(j, path);
    if (v < 0)
        throw Error("config", "must be >= 0", path);
    return static_cast<std::size_t>(v);
}

template <class F> void with_key(const Json &j, const char *key, const std::string &path, F f) {
    if (j.contains(key))
        f(j.at(key), path + "." + key);
}

} // namespace

Scenario scenario_from_json(const Json &j) {
    check_keys(j, "scenario", {"name", "description", "sample_rate_hz", "seed", "impairments", "tone_test", "sweep"});
    Scenario s;
    const std::string root = "scenario";
    with_key(j, "name", root, [&](const Json &v, const std::string &p) { s.name = get_string(v, p); });
    with_key(j, "description", root, [&](const Json &v, const std::string &p) { (void)get_string(v, p); });
    with_key(j, "sample_rate_hz", root, [&](const Json &v, const std::string &p) {
        s.sample_rate_hz = get_number(v, p);
        if (!(s.sample_rate_hz > 0.0))
            throw Error("config", "must be positive", p);
    });
    with_key(j, "seed", root, [&](const Json &v, const std::string &p) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw Error("config", "expected a non-negative integer", p);
        s.seed = v.get<std::uint64_t>();
    });
    with_key(j, "impairments", root,
             [&](const Json &v, const std::string &p) { s.impairments = impairment_config_from_json(v, p); });
    with_key(j, "tone_test", root, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"freq_hz", "n_samples", "n_fft", "averaging", "m_max", "margin_db"});
        auto &t = s.tone_test;
        with_key(v, "freq_hz", p, [&](const Json &w, const std::string &q) { t.freq_hz = get_number(w, q); });
        with_key(v, "n_samples", p, [&](const Json &w, const std::string &q) { t.n_samples = get_count(w, q); });
        with_key(v, "n_fft", p, [&](const Json &w, const std::string &q) { t.n_fft = get_count(w, q); });
        with_key(v, "averaging", p, [&](const Json &w, const std::string &q) { t.averaging = get_count(w, q); });
        with_key(v, "m_max", p, [&](const Json &w, const std::string &q) { t.m_max = static_cast<int>(get_int(w, q)); });
        with_key(v, "margin_db", p, [&](const Json &w, const std::string &q) { t.margin_db = get_number(w, q); });
    });
    with_key(j, "sweep", root, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"ofdm", "powers_dbm", "methods", "channel_len", "n_max", "m_max", "train_fraction"});
        auto &w = s.sweep;
        with_key(v, "ofdm", p, [&](const Json &x, const std::string &q) { w.ofdm = ofdm_spec_from_json(x, q); });
        with_key(v, "powers_dbm", p, [&](const Json &x, const std::string &q) { w.powers_dbm = get_reals(x, q); });
        with_key(v, "methods", p, [&](const Json &x, const std::string &q) {
            if (!x.is_array())
                throw Error("config", "expected an array of method names", q);
            w.methods.clear();
            for (std::size_t i = 0; i < x.size(); ++i)
                w.methods.push_back(get_string(x[i], q + "[" + std::to_string(i) + "]"));
        });
        with_key(v, "channel_len", p, [&](const Json &x, const std::string &q) { w.channel_len = get_count(x, q); });
        with_key(v, "n_max", p, [&](const Json &x, const std::string &q) { w.n_max = static_cast<int>(get_int(x, q)); });
        with_key(v, "m_max", p, [&](const Json &x, const std::string &q) { w.m_max = static_cast<int>(get_int(x, q)); });
        with_key(v, "train_fraction", p,
                 [&](const Json &x, const std::string &q) { w.train_fraction = get_number(x, q); });
    });
    return s;
}

Json to_json(const Scenario &s) {
    Json j;
    j["name"] = s.name;
    j["sample_rate_hz"] = s.sample_rate_hz;
    j["seed"] = s.seed;
    j["impairments"] = to_json(s.impairments);
    const auto &t = s.tone_test;
    j["tone_test"] = Json{{"freq_hz", t.freq_hz}, {"n_samples", t.n_samples}, {"n_fft", t.n_fft},
                          {"averaging", t.averaging}, {"m_max", t.m_max}, {"margin_db", t.margin_db}};
    const auto &w = s.sweep;
    j["sweep"] = Json{{"ofdm", to_json(w.ofdm)},         {"powers_dbm", w.powers_dbm}, {"methods", w.methods},
                      {"channel_len", w.channel_len},   {"n_max", w.n_max},           {"m_max", w.m_max},
                      {"train_fraction", w.train_fraction}};
    return j;
}

Scenario load_scenario(const std::string &file) { return scenario_from_json(load_json_file(file)); }

std::string preset_dir() {
    if (const char *env = std::getenv("FDSIM_PRESET_DIR"); env && *env)
        return env;
    return FDSIM_PRESET_DIR;
}

std::vector<std::string> list_presets() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto &e : fs::directory_iterator(preset_dir(), ec))
        if (e.path().extension() == ".json")
            out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string preset_path(const std::string &name) {
    const fs::path p = fs::path(preset_dir()) / (name + ".json");
    if (!fs::exists(p)) {
        std::string valid;
        for (const auto &n : list_presets())
            valid += (valid.empty() ? "" : ",") + n;
        throw Error("unknown_preset", "unknown preset '" + name + "' (valid: " + valid + ")", "preset");
    }
    return p.string();
}

const std::vector<std::string> &method_names() {
    static const std::vector<std::string> names{"linear", "nonlinear", "nonlinear_env", "widely_linear", "joint"};
    return names;
}

CancellerSpec method_from_name(const std::string &name, const SweepSpec &w) {
    if (name == "linear")
        return linear_spec(w.channel_len);
    if (name == "nonlinear")
        return nonlinear_spec(w.n_max, NonlinearBasis::Power, w.channel_len);
    if (name == "nonlinear_env")
        return nonlinear_spec(w.n_max, NonlinearBasis::Envelope, w.channel_len);
    if (name == "widely_linear")
        return widely_linear_spec(w.channel_len);
    if (name == "joint")
        return joint_spec(w.m_max, w.channel_len);
    std::string valid;
    for (const auto &n : method_names())
        valid += (valid.empty() ? "" : ",") + n;
    throw Error("unknown_method", "unknown method '" + name + "' (valid: " + valid + ")", "methods");
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

std::vector<double> parse_power_range(const std::string &text) {
    auto num = [&](const std::string &s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception &) {
            throw Error("invalid_argument", "cannot parse power value '" + s + "' in '" + text + "'", "powers");
        }
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(item);
        if (parts.size() != 3)
            throw Error("invalid_argument", "power range must be a:b:step", "powers");
        const double a = num(parts[0]), b = num(parts[1]), step = num(parts[2]);
        if (!(step > 0.0) || b < a)
            throw Error("invalid_argument", "power range needs step > 0 and b >= a", "powers");
        const long n = std::lround(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i)
            out.push_back(a + static_cast<double>(i) * step);
    } else {
        for (const auto &s : split_list(text))
            out.push_back(num(s));
    }
    if (out.empty())
        throw Error("invalid_argument", "power list is empty", "powers");
    return out;
}

Json ExperimentManifest::to_json(const Scenario &resolved) const {
    Json j;
    j["command"] = command;
    j["scenario"] = scenario;
    j["config_path"] = config_path;
    j["seed"] = seed;
    j["output_dir"] = output_dir;
    j["sweep_grid"] = Json{{"powers_dbm", powers_dbm}, {"methods", methods}};
    j["resolved_config"] = fdsim::to_json(resolved);
    return j;
}

ToneTestResult tone_test(const Scenario &s) {
    const auto &t = s.tone_test;
    s.impairments.validate();
    const double amp = std::pow(10.0, s.impairments.tx_ref_dbfs / 20.0);
    const ComplexBasebandSignal x = gen_tone(t.freq_hz, amp, t.n_samples, s.sample_rate_hz);
    ReceivedSignal rs = simulate_received(x, s.impairments, derive_seed(s.seed, "tone_test"));
    Spectrum sp = spectrum(rs.r, t.n_fft, t.averaging, Window::Hann);
    HarmonicCheckOptions opt;
    opt.margin_db = t.margin_db;
    HarmonicReport rep = verify_harmonics(sp, t.freq_hz, t.m_max, opt);
    return {std::move(rs.r), std::move(sp), std::move(rep)};
}

ComplexBasebandSignal sweep_signal(const Scenario &s) {
    OfdmFrameSpec spec = s.sweep.ofdm;
    spec.seed = derive_seed(s.seed, "sweep/ofdm");
    const ComplexBasebandSignal u = gen_ofdm_frames(spec, s.sample_rate_hz);
    const double g = std::pow(10.0, s.impairments.tx_ref_dbfs / 20.0);
    CVector v(u.samples());
    for (auto &c : v)
        c *= g;
    return {std::move(v), u.sample_rate()};
}

std::vector<SuppressionReport> sweep(const Scenario &s) {
    const auto &w = s.sweep;
    require(!w.methods.empty(), "sweep: method list is empty");
    require(!w.powers_dbm.empty(), "sweep: power list is empty");
    for (double p : w.powers_dbm)
        require(p >= -10.0 && p <= 22.0, "sweep: power " + std::to_string(p) + " dBm outside [-10, 22]");
    std::vector<CancellerSpec> specs;
    for (const auto &m : w.methods)
        specs.push_back(method_from_name(m, w));
    const ComplexBasebandSignal x = sweep_signal(s);
    TrainTestSplit split{ofdm_frame_length(w.ofdm, s.sample_rate_hz), w.train_fraction};
    return run_sweep(x, s.impairments, w.powers_dbm, specs, split, derive_seed(s.seed, "sweep/chain"));
}

void ensure_output_dir(const std::string &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw Error("io", "cannot create output directory " + dir, "out");
    const fs::path probe = fs::path(dir) / ".fdsim_write_probe";
    {
        std::ofstream os(probe);
        if (!os)
            throw Error("io", "output directory not writable: " + dir, "out");
    }
    fs::remove(probe, ec);
}

void write_file_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error("io", "cannot write " + tmp);
        os << content;
        if (!os)
            throw Error("io", "write failed: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
        throw Error("io", "cannot rename " + tmp + " to " + path);
}

ToneTestResult run_tone_test(const Scenario &s, const ExperimentManifest &m) {
    ensure_output_dir(m.output_dir);
    ToneTestResult res = tone_test(s);
    const fs::path out(m.output_dir);
    std::ostringstream sp, hm;
    write_spectrum_csv(sp, res.spectrum);
    write_harmonics_csv(hm, res.harmonics);
    write_file_atomic((out / "spectrum.csv").string(), sp.str());
    write_file_atomic((out / "harmonics.csv").string(), hm.str());
    write_iq_file((out / "received.iq").string(), res.received);
    write_file_atomic((out / "manifest.json").string(), m.to_json(s).dump(2) + "\n");
    return res;
}

std::vector<SuppressionReport> run_sweep(const Scenario &s, const ExperimentManifest &m) {
    require(!m.methods.empty(), "sweep: method list is empty");
    ensure_output_dir(m.output_dir);
    auto rows = sweep(s);
    std::ostringstream os;
    write_suppression_csv(os, rows);
    const fs::path out(m.output_dir);
    write_file_atomic((out / "suppression.csv").string(), os.str());
    write_file_atomic((out / "manifest.json").string(), m.to_json(s).dump(2) + "\n");
    return rows;
}

} // namespace fdsim
