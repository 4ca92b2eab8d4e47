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

#include "pmscast/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pmscast/estimation.hpp"

namespace pmscast
{

namespace
{

constexpr double kPi = std::numbers::pi;

} // namespace

double tilde_u0(int k_users, double m_ph)
{
    if (k_users < 1)
        throw std::invalid_argument("tilde_u0: k_users must be at least 1");
    return std::sqrt(kPi / (4.0 * k_users)) * quantization_gain(m_ph);
}

double rate_large_pilot(int n_rf, int l_per_sub, int k_users, double m_ph, double beta, double rho,
                        double alpha_min)
{
    const double t = tilde_u0(k_users, m_ph);
    const double t2 = t * t;
    const double l = l_per_sub, k = k_users, nrf = n_rf;
    const double num = k * nrf * l * l * l * t2 * t2;
    const double den = k * l * l * t2 * (1.0 - t2) +
                       (l * t2 + 1.0 - t2) * (1.0 / (beta * beta * nrf * rho * alpha_min) + 1.0 - t2);
    return std::log2(1.0 + num / den);
}

double rate_large_pilot(const SystemConfig &cfg, double alpha_min)
{
    return rate_large_pilot(cfg.n_rf, cfg.l_per_sub, cfg.k_users, cfg.m_ph, cfg.beta, cfg.rho, alpha_min);
}

double rate_large_nrf(int n_rf, double u, double delta_sq, int tau_p, double rho_p, std::span<const double> alphas)
{
    if (alphas.empty() || !(delta_sq > 0.0))
        throw std::invalid_argument("rate_large_nrf: need users and a positive variance");
    double s = 0.0;
    for (double a : alphas)
    {
        const double snr = tau_p * rho_p * a * delta_sq;
        s += (1.0 + snr) / snr;
    }
    const double x = u * u / delta_sq;
    const double sinr = n_rf * (x * s + 1.0) * (x * s + 1.0) / (x * s * s + (x + 1.0) * s);
    return std::log2(1.0 + sinr);
}

double rate_large_nrf(const SystemConfig &cfg, std::span<const double> alphas)
{
    const auto st = equiv_channel_stats(cfg.l_per_sub, cfg.beta, cfg.k_users, cfg.m_ph);
    return rate_large_nrf(cfg.n_rf, st.u, st.delta_sq, cfg.tau_p, cfg.rho_p, alphas);
}

double rate_large_L(int n_rf, int l_per_sub, int k_users, double m_ph)
{
    const double g = quantization_gain(m_ph);
    const double k = k_users;
    const double sinr = kPi * n_rf * l_per_sub * g * g / ((4.0 - kPi / k * g * g) * (k + 1.0));
    return std::log2(1.0 + sinr);
}

double rate_large_L(const SystemConfig &cfg)
{
    return rate_large_L(cfg.n_rf, cfg.l_per_sub, cfg.k_users, cfg.m_ph);
}

double rate_mph_limit(int n_rf, int l_per_sub, int k_users)
{
    const double k = k_users;
    return std::log2(1.0 + kPi * n_rf * l_per_sub * k / ((4.0 * k - kPi) * (k + 1.0)));
}

double rate_mph_limit(const SystemConfig &cfg)
{
    return rate_mph_limit(cfg.n_rf, cfg.l_per_sub, cfg.k_users);
}

double rate_large_K(int n_rf, int l_per_sub, int k_users, double m_ph)
{
    const double g = quantization_gain(m_ph);
    return std::log2(1.0 + kPi * n_rf * l_per_sub * g * g / (4.0 * k_users));
}

double rate_large_K(const SystemConfig &cfg)
{
    return rate_large_K(cfg.n_rf, cfg.l_per_sub, cfg.k_users, cfg.m_ph);
}

} // namespace pmscast
