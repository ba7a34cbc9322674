// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_FFT_HPP
#define FDSIM_FFT_HPP

#include "fdsim/signal.hpp"

namespace fdsim {

// Unnormalized DFT in place. inverse=true uses e^{+j2pi kn/N} without 1/N.
void fft_inplace(CVector &data, bool inverse = false);

} // namespace fdsim

#endif
