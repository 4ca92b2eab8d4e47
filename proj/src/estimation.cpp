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

#include "pmscast/estimation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace pmscast
{

double quantization_gain(double m_ph)
{
    if (std::isinf(m_ph))
        return 1.0;
    if (!(m_ph >= 2.0))
        throw std::invalid_argument("m_ph must be at least 2");
    return m_ph / std::numbers::pi * std::sin(std::numbers::pi / m_ph);
}

ChannelStats equiv_channel_stats(int l_per_sub, double beta, int k_users, double m_ph)
{
    if (l_per_sub < 1 || k_users < 1 || !(beta >= 0.0))
        throw std::invalid_argument("equiv_channel_stats: invalid arguments");
    const double s = quantization_gain(m_ph);
    const double l = l_per_sub, k = k_users;
    ChannelStats st;
    st.u = l * beta / 2.0 * std::sqrt(std::numbers::pi / k) * s;
    st.delta_sq = l * beta * beta * (1.0 - std::numbers::pi / (4.0 * k) * s * s);
    st.u0 = st.u / l;
    st.delta0_sq = st.delta_sq / l;
    st.tilde_u0 = std::sqrt(std::numbers::pi / (4.0 * k)) * s;
    return st;
}

UserStats estimate_stats(double alpha, const ChannelStats &stats, int tau_p, double rho_p)
{
    const double snr = tau_p * rho_p;
    const double var = alpha * stats.delta_sq;
    UserStats us;
    us.alpha = alpha;
    us.u_p = std::sqrt(alpha) * stats.u;
    us.delta_p_sq = snr * var * var / (1.0 + snr * var);
    us.delta_e_sq = var / (1.0 + snr * var);
    return us;
}

ComplexMatrix pilot_matrix(int k_users)
{
    if (k_users < 1)
        throw std::invalid_argument("pilot_matrix: k_users must be at least 1");
    const auto k = static_cast<std::size_t>(k_users);
    ComplexMatrix p(k, k);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k));
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t c = 0; c < k; ++c)
        {
            const auto m = (t * c) % k;
            p(t, c) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(k));
        }
    return p;
}

PilotBlock receive_pilots(const ComplexMatrix &equiv, int tau_p, double rho_p, const ComplexMatrix &pilots,
                          Rng &rng, NoiseMode noise)
{
    const std::size_t n_rf = equiv.rows(), users = equiv.cols();
    const auto tau = static_cast<std::size_t>(tau_p);
    if (pilots.rows() != tau || pilots.cols() != users)
        throw std::invalid_argument("receive_pilots: pilot matrix must be tau_p x K");

    PilotBlock block{ComplexMatrix(n_rf, tau), ComplexMatrix(n_rf, tau), ComplexMatrix(n_rf, users)};
    const double amp = std::sqrt(tau * rho_p);
    for (std::size_t t = 0; t < tau; ++t)
        for (std::size_t n = 0; n < n_rf; ++n)
        {
            cplx s{};
            for (std::size_t k = 0; k < users; ++k)
                s += equiv(n, k) * std::conj(pilots(t, k));
            cplx w{};
            if (noise == NoiseMode::enabled)
                w = rng.complex_normal();
            block.noise(n, t) = w;
            block.received(n, t) = amp * s + w;
        }
    for (std::size_t k = 0; k < users; ++k)
        for (std::size_t n = 0; n < n_rf; ++n)
        {
            cplx s{};
            for (std::size_t t = 0; t < tau; ++t)
                s += block.received(n, t) * pilots(t, k);
            block.despread(n, k) = s;
        }
    return block;
}

double mmse_gain(double alpha, const ChannelStats &stats, int tau_p, double rho_p)
{
    const double snr = tau_p * rho_p;
    const double var = alpha * stats.delta_sq;
    return var * std::sqrt(snr) / (snr * var + 1.0);
}

CVector mmse_estimate(std::span<const cplx> despread, double alpha, const ChannelStats &stats, int tau_p,
                      double rho_p)
{
    const double gain = mmse_gain(alpha, stats, tau_p, rho_p);
    const double prior = std::sqrt(alpha) * stats.u;
    const double expected = std::sqrt(alpha * tau_p * rho_p) * stats.u;
    CVector out(despread.size());
    for (std::size_t i = 0; i < despread.size(); ++i)
        out[i] = prior + gain * (despread[i] - expected);
    return out;
}

void write_estimation_rows(std::ostream &out, std::size_t trial, std::size_t user, std::span<const cplx> estimate,
                           std::span<const cplx> error)
{
    char buf[192];
    for (std::size_t n = 0; n < estimate.size(); ++n)
    {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", trial, user, n, estimate[n].real(),
                      estimate[n].imag(), error[n].real(), error[n].imag());
        out << buf;
    }
}

} // namespace pmscast
