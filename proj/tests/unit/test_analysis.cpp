// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fdsim/analysis.hpp"
#include "fdsim/error.hpp"
#include "fdsim/harness.hpp"
#include "fdsim/impairments.hpp"

using namespace fdsim;

namespace {

constexpr double kFs = 80e6;

Scenario cheap_tone_scenario(const std::string &preset) {
    Scenario s = load_scenario(preset_path(preset));
    s.tone_test.n_fft = 8192;
    s.tone_test.n_samples = 32768;
    s.tone_test.averaging = 0;
    s.tone_test.freq_hz = 129 * kFs / 8192;  // odd bin
    return s;
}

} // namespace

TEST_CASE("predicted harmonic locations") {
    const double f = 1e6;
    CHECK(predict_harmonics(1, f).freqs_hz == std::vector<double>{f});
    CHECK(predict_harmonics(3, f).freqs_hz == std::vector<double>{-3 * f});
    CHECK(predict_harmonics(5, f).freqs_hz == std::vector<double>{5 * f});
    CHECK(predict_harmonics(7, f).freqs_hz == std::vector<double>{-7 * f});
    const auto two = predict_harmonics(2, f);
    CHECK(two.freqs_hz == std::vector<double>{-2 * f, 2 * f});
    CHECK(two.equal_power);
    CHECK_FALSE(predict_harmonics(3, f).equal_power);
    for (int m = 1; m <= 15; ++m) {
        const auto p = predict_harmonics(m, f);
        CHECK(p.m == m);
        CHECK(p.freqs_hz.size() == (m % 2 ? 1u : 2u));
    }
    CHECK_THROWS_AS(predict_harmonics(0, f), Error);
}

TEST_CASE("identity chain: every order above the fundamental sits at the floor") {
    Scenario s = cheap_tone_scenario("ideal");
    const auto res = tone_test(s);
    const auto rep = verify_harmonics(res.spectrum, s.tone_test.freq_hz, 5);
    CHECK(rep.all_pass());
    CHECK_FALSE(rep.iq_image_detected);
    for (const auto &c : rep.orders)
        if (c.m >= 2) {
            CHECK(c.counterpart_at_floor);
            CHECK_FALSE(c.predicted_present);
        }
    CHECK(rep.floor_dbc < -60.0);
}

TEST_CASE("matched DAC tone test passes for m = 2, 3 with +3f far below -3f") {
    Scenario s = cheap_tone_scenario("fig5_m10dbm");
    const auto res = tone_test(s);
    const auto rep = verify_harmonics(res.spectrum, s.tone_test.freq_hz, 3);
    REQUIRE(rep.orders.size() == 3);
    CHECK(rep.orders[1].pass);
    CHECK(rep.orders[1].predicted_present);
    CHECK(rep.orders[2].pass);
    CHECK(rep.orders[2].predicted_present);
    // +3f only holds the receiver IQ image of -3f.
    CHECK(rep.orders[2].measured_dbc[0] - rep.orders[2].counterpart_dbc[0] >= 20.0);
    CHECK(rep.all_pass());
}

TEST_CASE("verify_harmonics passes across 100 seeds") {
    Scenario s = cheap_tone_scenario("fig5_m10dbm");
    s.tone_test.n_samples = 16384;
    int passed = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        s.seed = seed;
        const auto res = tone_test(s);
        passed += verify_harmonics(res.spectrum, s.tone_test.freq_hz, s.tone_test.m_max).all_pass() ? 1 : 0;
    }
    CHECK(passed == 100);
}

TEST_CASE("mismatched DAC rails show up as a -f image") {
    const double f = 129 * kFs / 8192;
    const auto x = gen_tone(f, 0.5, 32768, kFs);
    DacNonlinearity d{{1.0}, {0.95}};
    const auto s = spectrum(apply_dac(x, d), 8192);
    const auto rep = verify_harmonics(s, f, 3);
    CHECK(rep.iq_image_detected);
    // (1 - 0.95) / (1 + 0.95) as an amplitude ratio.
    CHECK(rep.image_dbc == doctest::Approx(20.0 * std::log10(0.05 / 1.95)).epsilon(1e-3));
    CHECK(rep.orders[0].pass);  // image far below the tone

    const auto clean = verify_harmonics(spectrum(x, 8192), f, 3);
    CHECK_FALSE(clean.iq_image_detected);
}

TEST_CASE("unequal even lines fail the equal-power rule") {
    const double f = 129 * kFs / 8192;
    auto x = gen_tone(f, 0.5, 32768, kFs).samples();
    const auto extra = gen_tone(2 * f, 0.01, 32768, kFs).samples();  // only +2f
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += extra[i];
    const auto rep = verify_harmonics(spectrum(ComplexBasebandSignal(x, kFs), 8192), f, 3);
    CHECK_FALSE(rep.orders[1].pass);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("odd line with a strong counterpart fails") {
    const double f = 129 * kFs / 8192;
    auto x = gen_tone(f, 0.5, 32768, kFs).samples();
    const auto a = gen_tone(-3 * f, 0.01, 32768, kFs).samples();
    const auto b = gen_tone(3 * f, 0.005, 32768, kFs).samples();  // only 6 dB below -3f
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] += a[i] + b[i];
    const auto rep = verify_harmonics(spectrum(ComplexBasebandSignal(x, kFs), 8192), f, 3);
    CHECK_FALSE(rep.orders[2].pass);
    CHECK(rep.orders[2].measured_dbc[0] - rep.orders[2].counterpart_dbc[0] == doctest::Approx(6.0206).epsilon(1e-3));
}

TEST_CASE("verify_harmonics argument checks") {
    const auto x = gen_tone(1e6, 0.5, 8192, kFs);
    const auto s = spectrum(x, 8192);
    CHECK_THROWS_AS(verify_harmonics(s, 1.001e6, 3), Error);  // off grid
    const double f = 129 * kFs / 8192;
    CHECK_THROWS_AS(verify_harmonics(s, f, 40), Error);       // beyond the span
    CHECK_THROWS_AS(verify_harmonics(s, f, 0), Error);
    CHECK_THROWS_AS(verify_harmonics(s, 0.0, 3), Error);
}

TEST_CASE("harmonics CSV") {
    const double f = 129 * kFs / 8192;
    const auto rep = verify_harmonics(spectrum(gen_tone(f, 0.5, 16384, kFs), 8192), f, 2);
    std::ostringstream os;
    write_harmonics_csv(os, rep);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "m,predicted_freqs_hz,measured_dbc,counterpart_dbc,pass");
    std::getline(is, line);
    CHECK(line.rfind("1,1259765.625,0.000,", 0) == 0);
    CHECK(line.substr(line.size() - 5) == ",true");
    std::getline(is, line);
    CHECK(line.rfind("2,-2519531.250;2519531.250,", 0) == 0);
}

TEST_CASE("skirt peak separates shared and independent oscillators") {
    const double f = 129 * kFs / 8192;
    const auto x = gen_tone(f, 0.5, 65536, kFs);
    CHECK(skirt_peak_dbc(spectrum(x, 8192), f) < -200.0);
    const auto shared = apply_phase_noise(x, {50.0, true, 4}, 3);
    const auto indep = apply_phase_noise(x, {50.0, false, 4}, 3);
    const double ds = skirt_peak_dbc(spectrum(shared, 8192), f);
    const double di = skirt_peak_dbc(spectrum(indep, 8192), f);
    CHECK(di > ds + 20.0);
    CHECK(di < 0.0);
    CHECK_THROWS_AS(skirt_peak_dbc(spectrum(x, 8192), f, 3, 2), Error);
    CHECK_THROWS_AS(skirt_peak_dbc(spectrum(x, 8192), 39.9e6, 2, 64), Error);
}

TEST_CASE("suppression budget") {
    CHECK(suppression_budget({20.0, -90.0, 10.0, 70.0}).required_suppression_db == doctest::Approx(50.0));
    CHECK(suppression_budget({}).required_suppression_db == doctest::Approx(50.0));
    // At the boundary nothing is required, and below it the requirement stays at zero.
    CHECK(suppression_budget({-30.0, -90.0, 10.0, 70.0}).required_suppression_db == 0.0);
    CHECK(suppression_budget({-50.0, -90.0, 10.0, 70.0}).required_suppression_db == 0.0);
    CHECK(suppression_budget({40.0, -90.0, 10.0, 70.0}).required_suppression_db ==
          doctest::Approx(suppression_budget({20.0, -90.0, 10.0, 70.0}).required_suppression_db + 20.0));

    double prev = -1.0;
    for (double tx = -40.0; tx <= 40.0; tx += 2.5) {
        const double r = suppression_budget({tx, -90.0, 10.0, 70.0}).required_suppression_db;
        CHECK(r >= prev);
        prev = r;
    }
    prev = -1.0;
    for (double papr = 0.0; papr <= 20.0; papr += 1.0) {
        const double r = suppression_budget({20.0, -90.0, papr, 70.0}).required_suppression_db;
        CHECK(r >= prev);
        prev = r;
    }
    CHECK_THROWS_AS(suppression_budget({NAN, -90.0, 10.0, 70.0}), Error);
    CHECK_THROWS_AS(suppression_budget({20.0, -90.0, INFINITY, 70.0}), Error);
}

TEST_CASE("budget CSV") {
    std::ostringstream os;
    write_budget_csv(os, suppression_budget({}));
    const std::string s = os.str();
    CHECK(s.rfind("item,value_db\n", 0) == 0);
    CHECK(s.find("required_suppression_db,50.0000\n") != std::string::npos);
    CHECK(s.find("papr_headroom_db,10.0000\n") != std::string::npos);
    CHECK(s.find("adc_dynamic_range_db,70.0000\n") != std::string::npos);
    CHECK(s.find("noise_floor_dbm,-90.0000\n") != std::string::npos);
}
