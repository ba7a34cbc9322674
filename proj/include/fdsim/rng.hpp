// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_RNG_HPP
#define FDSIM_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace fdsim {

using Rng = std::mt19937_64;

// Independent substream seed for a named consumer of a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);
Rng make_rng(std::uint64_t seed, std::string_view name);

} // namespace fdsim

#endif
