// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The fdsim Authors

#ifndef FDSIM_CONFIG_HPP
#define FDSIM_CONFIG_HPP

#include <string>

#include <json.hpp>

#include "fdsim/impairments.hpp"
#include "fdsim/signal.hpp"

namespace fdsim {

using Json = nlohmann::ordered_json;

// Strict readers: unknown keys and wrong types raise Error("config", ..., key path).
// Missing keys keep the struct defaults. Complex values are [re, im] or a bare real.
ImpairmentConfig impairment_config_from_json(const Json &j, const std::string &path = "impairments");
Json to_json(const ImpairmentConfig &cfg);

OfdmFrameSpec ofdm_spec_from_json(const Json &j, const std::string &path = "ofdm");
Json to_json(const OfdmFrameSpec &spec);

Json load_json_file(const std::string &file);

namespace cfg {

// Helpers shared by the scenario reader.
void check_keys(const Json &j, const std::string &path, std::initializer_list<const char *> allowed);
double get_number(const Json &j, const std::string &path);
std::int64_t get_int(const Json &j, const std::string &path);
bool get_bool(const Json &j, const std::string &path);
std::string get_string(const Json &j, const std::string &path);
std::vector<double> get_reals(const Json &j, const std::string &path);
CVector get_complexes(const Json &j, const std::string &path);

} // namespace cfg

} // namespace fdsim

#endif
