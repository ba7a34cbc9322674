// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/config.hpp"

#include <fstream>

#include "fdsim/error.hpp"

namespace fdsim {

namespace cfg {

[[noreturn]] static void fail(const std::string &path, const std::string &msg) { throw Error("config", msg, path); }

void check_keys(const Json &j, const std::string &path, std::initializer_list<const char *> allowed) {
    if (!j.is_object())
        fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char *a : allowed)
            ok = ok || it.key() == a;
        if (!ok)
            fail(path + "." + it.key(), "unknown key");
    }
}

double get_number(const Json &j, const std::string &path) {
    if (!j.is_number())
        fail(path, "expected a number");
    return j.get<double>();
}

std::int64_t get_int(const Json &j, const std::string &path) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

bool get_bool(const Json &j, const std::string &path) {
    if (!j.is_boolean())
        fail(path, "expected true or false");
    return j.get<bool>();
}

std::string get_string(const Json &j, const std::string &path) {
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<double> get_reals(const Json &j, const std::string &path) {
    if (!j.is_array())
        fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

CVector get_complexes(const Json &j, const std::string &path) {
    if (!j.is_array())
        fail(path, "expected an array of complex values");
    CVector out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const Json &e = j[i];
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            fail(p, "expected a number or [re, im]");
        }
    }
    return out;
}

} // namespace cfg

namespace {

using namespace cfg;

Json complexes_json(const CVector &v) {
    Json a = Json::array();
    for (const auto &c : v)
        a.push_back(Json::array({c.real(), c.imag()}));
    return a;
}

template <class F> void with_key(const Json &j, const char *key, const std::string &path, F f) {
    if (j.contains(key))
        f(j.at(key), path + "." + key);
}

// Re-throw library validation errors as config errors pointing at the section.
template <class F> void validate_at(const std::string &path, F f) {
    try {
        f();
    } catch (const Error &e) {
        if (e.code() == "config")
            throw;
        throw Error("config", e.what(), path);
    }
}

IqImbalance iq_from_json(const Json &j, const std::string &path) {
    check_keys(j, path, {"gamma", "delta"});
    IqImbalance iq;
    with_key(j, "gamma", path, [&](const Json &v, const std::string &p) { iq.gamma = get_complexes(v, p); });
    with_key(j, "delta", path, [&](const Json &v, const std::string &p) { iq.delta = get_complexes(v, p); });
    validate_at(path, [&] { iq.validate(); });
    return iq;
}

Json iq_to_json(const IqImbalance &iq) { return Json{{"gamma", complexes_json(iq.gamma)}, {"delta", complexes_json(iq.delta)}}; }

} // namespace

ImpairmentConfig impairment_config_from_json(const Json &j, const std::string &path) {
    check_keys(j, path, {"dac", "tx_iq", "rx_iq", "phase_noise", "pa", "channel", "tx_power_dbm", "tx_ref_dbfs"});
    ImpairmentConfig c;
    with_key(j, "dac", path, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"coeffs_i", "coeffs_q"});
        with_key(v, "coeffs_i", p, [&](const Json &w, const std::string &q) { c.dac.coeffs_i = get_reals(w, q); });
        with_key(v, "coeffs_q", p, [&](const Json &w, const std::string &q) { c.dac.coeffs_q = get_reals(w, q); });
        validate_at(p, [&] { c.dac.validate(); });
    });
    with_key(j, "tx_iq", path, [&](const Json &v, const std::string &p) { c.tx_iq = iq_from_json(v, p); });
    with_key(j, "rx_iq", path, [&](const Json &v, const std::string &p) { c.rx_iq = iq_from_json(v, p); });
    with_key(j, "phase_noise", path, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"linewidth_hz", "shared_oscillator", "delay_samples"});
        with_key(v, "linewidth_hz", p, [&](const Json &w, const std::string &q) { c.pn.linewidth_hz = get_number(w, q); });
        with_key(v, "shared_oscillator", p,
                 [&](const Json &w, const std::string &q) { c.pn.shared_oscillator = get_bool(w, q); });
        with_key(v, "delay_samples", p, [&](const Json &w, const std::string &q) {
            const auto d = get_int(w, q);
            if (d < 0)
                throw Error("config", "delay_samples must be >= 0", q);
            c.pn.delay_samples = static_cast<std::size_t>(d);
        });
        validate_at(p, [&] { c.pn.validate(); });
    });
    with_key(j, "pa", path, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"coeffs_odd", "input_ref_dbm"});
        with_key(v, "coeffs_odd", p, [&](const Json &w, const std::string &q) { c.pa.coeffs_odd = get_reals(w, q); });
        with_key(v, "input_ref_dbm", p, [&](const Json &w, const std::string &q) { c.pa.input_ref_dbm = get_number(w, q); });
        validate_at(p, [&] { c.pa.validate(); });
    });
    with_key(j, "channel", path, [&](const Json &v, const std::string &p) {
        check_keys(v, p, {"h_si", "analog_suppression_db", "thermal_noise_dbfs", "adc_bits", "adc_full_scale", "adc_agc"});
        with_key(v, "h_si", p, [&](const Json &w, const std::string &q) { c.chan.h_si = get_complexes(w, q); });
        with_key(v, "analog_suppression_db", p,
                 [&](const Json &w, const std::string &q) { c.chan.analog_suppression_db = get_number(w, q); });
        with_key(v, "thermal_noise_dbfs", p, [&](const Json &w, const std::string &q) {
            if (w.is_null())
                c.chan.thermal_noise_dbfs.reset();
            else
                c.chan.thermal_noise_dbfs = get_number(w, q);
        });
        with_key(v, "adc_bits", p, [&](const Json &w, const std::string &q) { c.chan.adc_bits = static_cast<int>(get_int(w, q)); });
        with_key(v, "adc_full_scale", p, [&](const Json &w, const std::string &q) { c.chan.adc_full_scale = get_number(w, q); });
        with_key(v, "adc_agc", p, [&](const Json &w, const std::string &q) { c.chan.adc_agc = get_bool(w, q); });
        validate_at(p, [&] { c.chan.validate(); });
    });
    with_key(j, "tx_power_dbm", path, [&](const Json &v, const std::string &p) { c.tx_power_dbm = get_number(v, p); });
    with_key(j, "tx_ref_dbfs", path, [&](const Json &v, const std::string &p) { c.tx_ref_dbfs = get_number(v, p); });
    validate_at(path, [&] { c.validate(); });
    return c;
}

Json to_json(const ImpairmentConfig &c) {
    Json j;
    j["dac"] = Json{{"coeffs_i", c.dac.coeffs_i}, {"coeffs_q", c.dac.coeffs_q}};
    j["tx_iq"] = iq_to_json(c.tx_iq);
    j["rx_iq"] = iq_to_json(c.rx_iq);
    j["phase_noise"] = Json{{"linewidth_hz", c.pn.linewidth_hz},
                            {"shared_oscillator", c.pn.shared_oscillator},
                            {"delay_samples", c.pn.delay_samples}};
    j["pa"] = Json{{"coeffs_odd", c.pa.coeffs_odd}, {"input_ref_dbm", c.pa.input_ref_dbm}};
    Json ch;
    ch["h_si"] = complexes_json(c.chan.h_si);
    ch["analog_suppression_db"] = c.chan.analog_suppression_db;
    ch["thermal_noise_dbfs"] = c.chan.thermal_noise_dbfs ? Json(*c.chan.thermal_noise_dbfs) : Json(nullptr);
    ch["adc_bits"] = c.chan.adc_bits;
    ch["adc_full_scale"] = c.chan.adc_full_scale;
    ch["adc_agc"] = c.chan.adc_agc;
    j["channel"] = ch;
    j["tx_power_dbm"] = c.tx_power_dbm;
    j["tx_ref_dbfs"] = c.tx_ref_dbfs;
    return j;
}

OfdmFrameSpec ofdm_spec_from_json(const Json &j, const std::string &path) {
    check_keys(j, path, {"n_tones", "bandwidth_hz", "constellation_order", "n_frames", "cp_length", "taper_length"});
    OfdmFrameSpec s;
    auto count = [](const Json &v, const std::string &p) {
        const auto n = get_int(v, p);
        if (n < 0)
            throw Error("config", "must be >= 0", p);
        return static_cast<std::size_t>(n);
    };
    with_key(j, "n_tones", path, [&](const Json &v, const std::string &p) { s.n_tones = count(v, p); });
    with_key(j, "bandwidth_hz", path, [&](const Json &v, const std::string &p) { s.bandwidth_hz = get_number(v, p); });
    with_key(j, "constellation_order", path,
             [&](const Json &v, const std::string &p) { s.constellation_order = static_cast<int>(get_int(v, p)); });
    with_key(j, "n_frames", path, [&](const Json &v, const std::string &p) { s.n_frames = count(v, p); });
    with_key(j, "cp_length", path, [&](const Json &v, const std::string &p) { s.cp_length = count(v, p); });
    with_key(j, "taper_length", path, [&](const Json &v, const std::string &p) { s.taper_length = count(v, p); });
    return s;
}

Json to_json(const OfdmFrameSpec &s) {
    return Json{{"n_tones", s.n_tones},     {"bandwidth_hz", s.bandwidth_hz}, {"constellation_order", s.constellation_order},
                {"n_frames", s.n_frames},   {"cp_length", s.cp_length},       {"taper_length", s.taper_length}};
}

Json load_json_file(const std::string &file) {
    std::ifstream is(file);
    if (!is)
        throw Error("io", "cannot open config file " + file);
    try {
        return Json::parse(is, nullptr, true, true);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error("config", std::string("JSON parse error in ") + file + ": " + e.what());
    }
}

} // namespace fdsim
