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

#include "pmscast/model.hpp"

#include <cmath>
#include <numbers>

namespace pmscast
{

namespace
{

void require(bool ok, const char *what)
{
    if (!ok)
        throw ConfigError(what);
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

SystemConfig validate_config(const SystemConfig &cfg)
{
    require(cfg.n_rf >= 1, "n_rf must be at least 1");
    require(cfg.l_per_sub >= 1, "l_per_sub must be at least 1");
    require(cfg.k_users >= 1, "k_users must be at least 1");
    require(static_cast<long long>(cfg.n_rf) * cfg.l_per_sub == cfg.n_total,
            "n_total mismatch: n_total must equal n_rf * l_per_sub");
    require(cfg.m_ph >= 2, "m_ph must be at least 2");
    require(cfg.tau_p == cfg.k_users, "tau_p must equal k_users");
    require(cfg.tau_c > cfg.tau_p, "tau_c must exceed tau_p");
    require(std::isfinite(cfg.beta) && cfg.beta >= 0.0 && cfg.beta <= 1.0, "beta must lie in [0, 1]");
    require(std::isfinite(cfg.gamma) && cfg.gamma >= 0.0 && cfg.gamma <= 1.0, "gamma must lie in [0, 1]");
    require(positive_finite(cfg.rho), "rho must be positive");
    require(positive_finite(cfg.rho_p), "rho_p must be positive");
    require(positive_finite(cfg.eps_r), "eps_r must be positive");
    require(positive_finite(cfg.cell_radius), "cell_radius must be positive");
    require(positive_finite(cfg.pathloss_exp), "pathloss_exp must be positive");
    require(positive_finite(cfg.f_c), "f_c must be positive");
    require(positive_finite(cfg.f_m), "f_m must be positive");
    require(positive_finite(cfg.bandwidth), "bandwidth must be positive");
    require(std::isfinite(cfg.noise_density_dbm_hz), "noise_density_dbm_hz must be finite");
    return cfg;
}

double noise_power_dbm(double density_dbm_hz, double bandwidth_hz)
{
    return density_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

double dbm_to_normalized_snr(double power_dbm, double noise_dbm)
{
    return std::pow(10.0, (power_dbm - noise_dbm) / 10.0);
}

std::int64_t coherence_symbols(double f_m, double bandwidth)
{
    const double t_c = std::sqrt(9.0 / (16.0 * std::numbers::pi * f_m * f_m));
    return static_cast<std::int64_t>(std::floor(bandwidth * t_c));
}

double path_loss(double distance, double exponent) { return std::pow(distance, -exponent); }

double alpha_b2p(const GeometryParams &geo)
{
    const double gain = std::pow(10.0, geo.antenna_gain_dbi / 10.0);
    return gain * geo.element_area / (4.0 * std::numbers::pi * geo.d_b2p * geo.d_b2p);
}

double beta_from_geometry(const GeometryParams &geo, double gamma) { return gamma * alpha_b2p(geo); }

double resolve_normalized_snr(std::optional<double> linear, std::optional<double> dbm,
                              double noise_dbm, std::string_view name)
{
    if (linear)
        return *linear;
    if (dbm)
        return dbm_to_normalized_snr(*dbm, noise_dbm);
    throw ConfigError(std::string(name) + " requires either a linear value or a dBm power");
}

double noise_floor_dbm(const SystemConfig &cfg)
{
    return noise_power_dbm(cfg.noise_density_dbm_hz, cfg.bandwidth);
}

} // namespace pmscast
