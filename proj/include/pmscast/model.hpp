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

#ifndef PMSCAST_MODEL_HPP
#define PMSCAST_MODEL_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pmscast
{

// Raised for any invalid configuration value. The message names the violated
// invariant, e.g. "tau_p must equal k_users".
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// All scalar parameters of one system. Powers `rho`, `rho_p` and `eps_r` are
// linear and normalised by the noise power.
struct SystemConfig
{
    int n_rf = 4;       // RF chains
    int l_per_sub = 8;  // reflecting elements per sub-surface
    int n_total = 32;   // n_rf * l_per_sub
    int k_users = 8;
    int m_ph = 2;       // phase-shift resolution

    double beta = 0.01;  // per-element amplitude
    double gamma = 1.0;  // energy reflection efficiency

    double rho = 4.412934637357120e10;   // -10 dBm over 180 kHz at -169 dBm/Hz
    double rho_p = 4.412934637357120e9;   // -20 dBm, same noise floor
    int tau_p = 8;                        // pilot length, equal to k_users
    std::int64_t tau_c = 76165;           // coherence interval in symbols
    double eps_r = 1.0e3;                 // average received training power

    double cell_radius = 200.0;  // metres
    double pathloss_exp = 3.0;

    double f_c = 4.25e9;  // Hz
    double f_m = 1.0;     // Hz
    double bandwidth = 180e3;
    double noise_density_dbm_hz = -169.0;

    bool operator==(const SystemConfig &) const = default;
};

// Horn-antenna-to-surface geometry.
struct GeometryParams
{
    double antenna_gain_dbi = 20.0;
    double element_area = 1.44e-4;  // 12 mm x 12 mm
    double d_b2p = 1.0;             // metres
};

/// Returns cfg unchanged when every invariant holds; throws ConfigError naming
/// the first violated one otherwise.
SystemConfig validate_config(const SystemConfig &cfg);

double noise_power_dbm(double density_dbm_hz, double bandwidth_hz);

double dbm_to_normalized_snr(double power_dbm, double noise_dbm);

/// floor(bandwidth * sqrt(9 / (16 pi f_m^2))): the coherence time expressed in
/// symbols at one symbol per 1/bandwidth seconds.
std::int64_t coherence_symbols(double f_m, double bandwidth);

double path_loss(double distance, double exponent);

double alpha_b2p(const GeometryParams &geo);

/// gamma * G * A_e / (4 pi d^2), with G converted from dBi.
double beta_from_geometry(const GeometryParams &geo, double gamma);

/// Picks the normalised SNR from either a linear value or a dBm transmit power
/// (converted against `noise_dbm`). The linear value wins when both are set.
double resolve_normalized_snr(std::optional<double> linear, std::optional<double> dbm,
                              double noise_dbm, std::string_view name);

/// Noise floor of a configuration in dBm.
double noise_floor_dbm(const SystemConfig &cfg);

} // namespace pmscast

#endif
