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

#ifndef PMSCAST_RATE_HPP
#define PMSCAST_RATE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmscast/channel.hpp"
#include "pmscast/estimation.hpp"
#include "pmscast/model.hpp"

namespace pmscast
{

struct PowerAllocation
{
    std::vector<double> etas;
    std::optional<double> phi;  // normaliser of the many-RF-chain closed form
};

enum class RateMethod
{
    analytic,
    monte_carlo,
};

struct RateReport
{
    std::vector<double> per_user_rates;  // bits/s/Hz
    double multicast_rate = 0.0;         // min of per_user_rates
    std::vector<double> a_terms;         // desired-signal amplitude |A_k|
    std::vector<double> b_terms;         // leakage power B_k
    std::vector<double> rate_stderr;     // zero for analytic reports
    RateMethod method = RateMethod::analytic;
};

/// Desired-signal amplitude and leakage power of one user under matched-filter
/// precoding with statistical CSI at the receiver. Throws std::domain_error
/// when any estimate has zero second moment.
struct SinrTerms
{
    double a = 0.0;
    double b = 0.0;

    double sinr() const { return a * a / (b + 1.0); }
};

SinrTerms sinr_terms(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                     std::span<const double> etas, std::size_t k);

/// log2(1 + SINR_k).
double rate_user(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                 std::span<const double> etas, std::size_t k);

/// Evaluates every user and takes the minimum.
RateReport multicast_rate(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                          std::span<const double> etas);

/// Statistics of every user for a configuration and a set of path-loss
/// coefficients.
std::vector<UserStats> user_stats_for(const SystemConfig &cfg, std::span<const double> alphas);

/// Closed-form report for a configuration.
RateReport analytic_rates(const SystemConfig &cfg, std::span<const double> alphas, std::span<const double> etas);

struct MonteCarloOptions
{
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// Draws estimates and errors from their Gaussian laws and measures A_k (sample
/// mean of the received desired term) and B_k (its population variance).
/// Deterministic for a fixed seed regardless of worker count.
RateReport monte_carlo_sinr(std::span<const UserStats> users, std::span<const double> etas, double rho, int n_rf,
                            const MonteCarloOptions &options);

enum class BeamMode
{
    ideal_quantized,
    trained,
};

struct EndToEndOptions
{
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::optional<std::vector<double>> etas;  // equal split when unset
    std::ostream *channel_dump = nullptr;     // rows only, no header
    std::ostream *estimation_dump = nullptr;  // rows only, no header
};

/// Full link simulation over one large-scale profile: channels, beam, pilots,
/// MMSE estimates and matched-filter precoding. A_k and B_k are taken over the
/// trial ensemble. The configuration is used as given. Trained beams are
/// rotated by the grid phase that makes the multicast sum most positive, which
/// does not change any measured power.
RateReport simulate_end_to_end(const SystemConfig &cfg, const LargeScaleProfile &profile, BeamMode mode,
                               const EndToEndOptions &options);

inline constexpr const char *kRateSweepHeader = "sweep_var,value,user,rate_analytic,rate_mc,stderr_mc";

/// One row per user plus a "min" row.
void write_rate_sweep_rows(std::ostream &out, const std::string &sweep_var, double value, const RateReport &analytic,
                           const RateReport &simulated);

} // namespace pmscast

#endif
