// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#include "fdsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace fdsim {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are cached per (size, direction) and never destroyed.
std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, bool inverse) {
    static std::map<std::pair<std::size_t, bool>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto it = cache.find({n, inverse});
    if (it != cache.end())
        return it->second;
    fftw_complex *buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(std::make_pair(n, inverse), p);
    return p;
}

} // namespace

void fft_inplace(CVector &data, bool inverse) {
    if (data.size() <= 1)
        return;
    fftw_plan p = get_plan(data.size(), inverse);
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

} // namespace fdsim
