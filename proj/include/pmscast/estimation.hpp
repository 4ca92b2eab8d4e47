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

#ifndef PMSCAST_ESTIMATION_HPP
#define PMSCAST_ESTIMATION_HPP

#include <iosfwd>
#include <span>

#include "pmscast/linalg.hpp"
#include "pmscast/rng.hpp"

namespace pmscast
{

// Moments of one entry of the combined channel C h_k.
struct ChannelStats
{
    double u = 0.0;          // mean (real)
    double delta_sq = 0.0;   // variance
    double u0 = 0.0;         // per-element mean, u / L
    double delta0_sq = 0.0;  // per-element variance, delta_sq / L
    double tilde_u0 = 0.0;   // u0 / beta
};

// MMSE statistics of one user's equivalent channel.
struct UserStats
{
    double alpha = 0.0;
    double u_p = 0.0;         // mean of each estimate entry
    double delta_p_sq = 0.0;  // variance of each estimate entry
    double delta_e_sq = 0.0;  // variance of each error entry
};

/// (M/pi) sin(pi/M); 1 for an infinite resolution.
double quantization_gain(double m_ph);

/// Mean and variance of an entry of C h_k when the beam is the quantized
/// multicast-aligned beam. Pass an infinite `m_ph` for unquantized phases.
ChannelStats equiv_channel_stats(int l_per_sub, double beta, int k_users, double m_ph);

UserStats estimate_stats(double alpha, const ChannelStats &stats, int tau_p, double rho_p);

/// K x K discrete-Fourier pilots e^{-j 2 pi t k / K} / sqrt(K); column k is
/// user k's sequence.
ComplexMatrix pilot_matrix(int k_users);

struct PilotBlock
{
    ComplexMatrix received;  // N_RF x tau_p
    ComplexMatrix noise;     // N_RF x tau_p
    ComplexMatrix despread;  // N_RF x K, column k = received * pilot_k
};

/// Y = sqrt(tau_p rho_p) sum_k g_k phi_k^H + W, then despreads every user.
/// `equiv` is N_RF x K with column k the equivalent channel of user k.
PilotBlock receive_pilots(const ComplexMatrix &equiv, int tau_p, double rho_p, const ComplexMatrix &pilots,
                          Rng &rng, NoiseMode noise = NoiseMode::enabled);

/// Scalar multiplying the innovation in the MMSE estimate.
double mmse_gain(double alpha, const ChannelStats &stats, int tau_p, double rho_p);

/// sqrt(alpha) u 1 + gain (y - sqrt(alpha tau_p rho_p) u 1).
CVector mmse_estimate(std::span<const cplx> despread, double alpha, const ChannelStats &stats, int tau_p,
                      double rho_p);

inline constexpr const char *kEstimationDumpHeader = "trial,user,element,re_ghat,im_ghat,re_err,im_err";

/// One row per entry; `error` is the true channel minus the estimate.
void write_estimation_rows(std::ostream &out, std::size_t trial, std::size_t user, std::span<const cplx> estimate,
                           std::span<const cplx> error);

} // namespace pmscast

#endif
