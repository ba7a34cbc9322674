// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/iq_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fdsim/error.hpp"

namespace fdsim {

namespace {

void put_le(std::ostream &os, double v) {
    std::uint64_t u = std::bit_cast<std::uint64_t>(v);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>(u >> (8 * i));
    os.write(reinterpret_cast<const char *>(b), 8);
}

double get_le(const unsigned char *b) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i)
        u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

} // namespace

void write_iq_file(const std::string &path, const ComplexBasebandSignal &x) {
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw Error("io", "cannot open " + path + " for writing");
        for (const auto &s : x.samples()) {
            put_le(os, s.real());
            put_le(os, s.imag());
        }
        if (!os)
            throw Error("io", "write failed: " + path);
    }
    std::ofstream hdr(path + ".hdr", std::ios::trunc);
    if (!hdr)
        throw Error("io", "cannot open " + path + ".hdr for writing");
    char rate[64];
    std::snprintf(rate, sizeof rate, "%.17g", x.sample_rate());
    hdr << "format=cf64le\n" << "sample_rate_hz=" << rate << "\n" << "length=" << x.size() << "\n";
}

ComplexBasebandSignal read_iq_file(const std::string &path) {
    std::ifstream hdr(path + ".hdr");
    if (!hdr)
        throw Error("io", "missing header " + path + ".hdr");
    double fs = 0.0;
    std::size_t len = 0;
    bool have_fs = false, have_len = false;
    std::string line;
    while (std::getline(hdr, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        const std::string k = line.substr(0, eq), v = line.substr(eq + 1);
        if (k == "sample_rate_hz") {
            fs = std::stod(v);
            have_fs = true;
        } else if (k == "length") {
            len = std::stoull(v);
            have_len = true;
        } else if (k == "format" && v != "cf64le") {
            throw Error("io", "unsupported IQ format '" + v + "'", "format");
        }
    }
    if (!have_fs || !have_len)
        throw Error("io", "header " + path + ".hdr lacks sample_rate_hz or length");

    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("io", "cannot open " + path);
    std::vector<unsigned char> raw(len * 16);
    is.read(reinterpret_cast<char *>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(is.gcount()) != raw.size())
        throw Error("io", "IQ file shorter than header length: " + path);
    CVector out(len);
    for (std::size_t i = 0; i < len; ++i)
        out[i] = {get_le(&raw[16 * i]), get_le(&raw[16 * i + 8])};
    return {std::move(out), fs};
}

} // namespace fdsim
