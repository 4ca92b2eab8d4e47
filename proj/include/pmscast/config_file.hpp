// SPDX-License-Identifier: Apache-2.0
//
// pmscast: link-level simulator for multicast systems with a programmable
// metasurface transmitter
// Copyright (C) 2026 The pmscast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef PMSCAST_CONFIG_FILE_HPP
#define PMSCAST_CONFIG_FILE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmscast/model.hpp"

namespace pmscast
{

// Raised when a file cannot be opened, read or written.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Contents of the [simulation] section. Enumerated options stay as strings
// here and are checked by the harness when the plan is built.
struct SimulationSettings
{
    std::string sweep_var = "none";
    std::vector<double> values;  // empty: single grid point
    std::size_t trials = 200;
    std::size_t profiles = 200;
    std::size_t full_trials = 1000;
    std::size_t full_profiles = 1000;
    std::optional<std::uint64_t> seed;
    std::uint64_t profile_seed = 0x5eedULL;
    std::string beam_mode = "ideal_quantized";
    std::string power_control = "equal";
    std::vector<std::string> series{"analytic", "numeric"};
    std::string approximation = "none";
    unsigned workers = 0;

    // Optional side outputs; empty means disabled.
    std::string channel_dump;
    std::string estimation_dump;
    std::string allocation_out;
    std::string rate_out;
};

struct ConfigFile
{
    SystemConfig system;
    GeometryParams geometry;
    bool beta_from_geometry = false;
    SimulationSettings simulation;
};

/// Parses the line-based `key = value` format with [system], [geometry] and
/// [simulation] sections. Comments start with ';'. Unknown sections or keys,
/// malformed numbers and invariant violations raise ConfigError. The returned
/// system config has already passed validate_config.
ConfigFile parse_config(std::istream &in);

/// Opens and parses `path`; an unreadable file raises IoError.
ConfigFile load_config(const std::string &path);

/// Splits "a,b,c" into doubles; raises ConfigError on malformed entries.
std::vector<double> parse_value_list(const std::string &text);

} // namespace pmscast

#endif
