// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_ERROR_HPP
#define FDSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fdsim {

// Every library failure carries a short machine code and, for configuration
// problems, the dotted key path that caused it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string &msg, std::string key = {})
        : std::runtime_error(msg), code_(std::move(code)), key_(std::move(key)) {}

    const std::string &code() const noexcept { return code_; }
    const std::string &key() const noexcept { return key_; }

private:
    std::string code_;
    std::string key_;
};

inline void require(bool ok, const std::string &msg, const char *code = "invalid_argument") {
    if (!ok)
        throw Error(code, msg);
}

} // namespace fdsim

#endif
