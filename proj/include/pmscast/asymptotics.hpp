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

#ifndef PMSCAST_ASYMPTOTICS_HPP
#define PMSCAST_ASYMPTOTICS_HPP

#include <span>

#include "pmscast/model.hpp"

namespace pmscast
{

// Closed-form multicast rates in limiting regimes, all with the power split
// that is optimal in that regime. Every function is a pure formula evaluator.

/// Normalised per-element beam mean sqrt(pi / 4K) (M/pi) sin(pi/M).
double tilde_u0(int k_users, double m_ph);

/// Perfect-estimation limit (pilot power to infinity), equal power split and
/// the weakest path loss `alpha_min`.
double rate_large_pilot(int n_rf, int l_per_sub, int k_users, double m_ph, double beta, double rho,
                        double alpha_min);
double rate_large_pilot(const SystemConfig &cfg, double alpha_min);

/// Many-RF-chain limit with the closed-form allocation; `u` and `delta_sq`
/// are the combined-channel moments.
double rate_large_nrf(int n_rf, double u, double delta_sq, int tau_p, double rho_p, std::span<const double> alphas);
double rate_large_nrf(const SystemConfig &cfg, std::span<const double> alphas);

/// Many-element limit; independent of the amplitude and of the powers.
double rate_large_L(int n_rf, int l_per_sub, int k_users, double m_ph);
double rate_large_L(const SystemConfig &cfg);

/// rate_large_L with continuous phases.
double rate_mph_limit(int n_rf, int l_per_sub, int k_users);
double rate_mph_limit(const SystemConfig &cfg);

/// rate_large_L simplified for many users.
double rate_large_K(int n_rf, int l_per_sub, int k_users, double m_ph);
double rate_large_K(const SystemConfig &cfg);

} // namespace pmscast

#endif
