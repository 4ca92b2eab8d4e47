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

#ifndef PMSCAST_HARNESS_HPP
#define PMSCAST_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmscast/config_file.hpp"
#include "pmscast/model.hpp"
#include "pmscast/rate.hpp"

namespace pmscast
{

enum class PowerControl
{
    equal,
    large_nrf,
    numeric,
};

enum class Approximation
{
    none,
    large_pilot,
    large_nrf,
    large_L,
    mph_limit,
    large_K,
};

struct ExperimentPlan
{
    std::string scenario = "custom";
    std::string label;             // appended to series names as "series:label"
    std::string sweep_var = "none";
    std::vector<double> values{0.0};
    std::size_t trials = 200;      // small-scale draws per profile
    std::size_t profiles = 200;    // large-scale profiles per grid point
    std::uint64_t seed = 1;        // drives the numeric series only
    std::uint64_t profile_seed = 0x5eedULL;
    SystemConfig base;
    BeamMode beam_mode = BeamMode::ideal_quantized;
    PowerControl power_control = PowerControl::equal;
    bool analytic = true;
    bool numeric = true;
    Approximation approximation = Approximation::none;
    bool per_user = false;         // add one row per user next to the "min" row
    unsigned workers = 0;

    std::string channel_dump;      // first profile of the first grid point
    std::string estimation_dump;   // first profile of the first grid point
    std::string allocation_out;    // first profile of every grid point
    std::string rate_out;          // per-user averages over profiles
};

// One CSV data row.
struct ResultRow
{
    std::string series;
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string user_or_min;
    double mean = 0.0;
    double stderr_value = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const ResultRow &) const = default;
};

inline constexpr const char *kResultsHeader = "series,sweep_var,sweep_value,user_or_min,mean,stderr,seed";

/// Keys accepted by apply_parameter.
const std::vector<std::string> &sweepable_parameters();

/// Returns a validated copy of `cfg` with `key` set to `value`. Changing n_rf
/// or l_per_sub updates n_total; changing k_users updates tau_p; the *_dbm and
/// *_db keys convert to linear units. Unknown keys raise ConfigError listing
/// the valid ones.
SystemConfig apply_parameter(SystemConfig cfg, const std::string &key, double value);

PowerControl parse_power_control(const std::string &name);
Approximation parse_approximation(const std::string &name);
BeamMode parse_beam_mode(const std::string &name);
std::string to_string(Approximation a);

/// Throws ConfigError on an empty grid, zero counts or an unusable series set.
void validate_plan(const ExperimentPlan &plan);

/// Builds a plan from a parsed config file. `seed` overrides the file's seed;
/// `full` switches to the full-scale trial and profile counts.
ExperimentPlan plan_from_config(const ConfigFile &file, std::optional<std::uint64_t> seed, bool full);

/// Runs every grid point of the plan. Analytic and approximate series depend
/// only on the profile seed; the numeric series also on the master seed.
std::vector<ResultRow> run_scenario(const ExperimentPlan &plan);

/// Replaces the plan's grid with `values` of `param` and runs it.
std::vector<ResultRow> run_sweep(const std::string &param, std::span<const double> values, ExperimentPlan plan);

const std::vector<std::string> &figure_ids();

/// Plans behind a rate figure. f_necs has none and raises ConfigError, as
/// does an unknown id.
std::vector<ExperimentPlan> figure_plans(const std::string &id, std::uint64_t seed, bool full, unsigned workers = 0);

/// Runs the preconfigured desk-scale (or full-scale) figure sweep.
std::vector<ResultRow> run_figure(const std::string &id, std::uint64_t seed, bool full, unsigned workers = 0);

void write_results_csv(std::ostream &out, std::span<const ResultRow> rows);

/// Writes header plus rows to `path`; failures raise IoError naming the path.
void write_results_file(const std::string &path, std::span<const ResultRow> rows);

} // namespace pmscast

#endif
