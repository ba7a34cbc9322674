// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_IQ_FILE_HPP
#define FDSIM_IQ_FILE_HPP

#include <string>

#include "fdsim/signal.hpp"

namespace fdsim {

// Raw little-endian float64 I,Q pairs in `path`; `path`.hdr holds
// sample_rate_hz, length and format as key=value lines.
void write_iq_file(const std::string &path, const ComplexBasebandSignal &x);
ComplexBasebandSignal read_iq_file(const std::string &path);

} // namespace fdsim

#endif
