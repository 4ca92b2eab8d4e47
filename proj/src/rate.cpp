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

#include "pmscast/rate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "pmscast/beamtraining.hpp"
#include "pmscast/parallel.hpp"
#include "pmscast/stats.hpp"

namespace pmscast
{

namespace
{

constexpr std::size_t kMcChunk = 8192;
constexpr std::size_t kE2eChunk = 16;

double second_moment(const UserStats &us)
{
    const double m = us.u_p * us.u_p + us.delta_p_sq;
    if (!(m > 0.0))
        throw std::domain_error("degenerate statistics: estimate has zero second moment");
    return m;
}

std::vector<double> precoder_weights(std::span<const UserStats> users, std::span<const double> etas)
{
    if (users.size() != etas.size())
        throw std::invalid_argument("one power coefficient per user required");
    std::vector<double> c(users.size());
    for (std::size_t i = 0; i < users.size(); ++i)
        c[i] = std::sqrt(etas[i] / second_moment(users[i]));
    return c;
}

RateReport report_from_samples(std::span<const ComplexRunningStats> z)
{
    RateReport rep;
    rep.method = RateMethod::monte_carlo;
    for (const auto &s : z)
    {
        const double a = std::abs(s.mean);
        const double b = s.population_variance();
        const double denom = 1.0 + b + a * a;
        rep.a_terms.push_back(a);
        rep.b_terms.push_back(b);
        rep.per_user_rates.push_back(std::log2(1.0 + a * a / (b + 1.0)));
        rep.rate_stderr.push_back(2.0 * a * s.stderr_of_mean() / (denom * std::numbers::ln2));
    }
    rep.multicast_rate = *std::min_element(rep.per_user_rates.begin(), rep.per_user_rates.end());
    return rep;
}

void merge_chunks(std::vector<std::vector<ComplexRunningStats>> &chunks, std::vector<ComplexRunningStats> &total)
{
    for (const auto &chunk : chunks)
        for (std::size_t k = 0; k < total.size(); ++k)
            total[k].merge(chunk[k]);
}

} // namespace

SinrTerms sinr_terms(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                     std::span<const double> etas, std::size_t k)
{
    if (k >= users.size())
        throw std::out_of_range("user index out of range");
    const auto c = precoder_weights(users, etas);
    const UserStats &uk = users[k];
    const double nrf = n_rf;

    double coherent = 0.0, mean_leak = 0.0, var_leak = 0.0;
    for (std::size_t i = 0; i < users.size(); ++i)
    {
        coherent += c[i] * uk.u_p * users[i].u_p;
        mean_leak += c[i] * users[i].u_p;
        var_leak += c[i] * c[i] * users[i].delta_p_sq;
    }
    coherent += c[k] * uk.delta_p_sq;

    SinrTerms t;
    t.a = std::sqrt(rho) * nrf * coherent;
    t.b = uk.alpha * rho * stats.delta_sq * nrf * mean_leak * mean_leak +
          uk.alpha * rho * (stats.u * stats.u + stats.delta_sq) * nrf * var_leak;
    return t;
}

double rate_user(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                 std::span<const double> etas, std::size_t k)
{
    return std::log2(1.0 + sinr_terms(rho, n_rf, stats, users, etas, k).sinr());
}

RateReport multicast_rate(double rho, int n_rf, const ChannelStats &stats, std::span<const UserStats> users,
                          std::span<const double> etas)
{
    if (users.empty())
        throw std::invalid_argument("multicast_rate: at least one user required");
    RateReport rep;
    for (std::size_t k = 0; k < users.size(); ++k)
    {
        const auto t = sinr_terms(rho, n_rf, stats, users, etas, k);
        rep.a_terms.push_back(t.a);
        rep.b_terms.push_back(t.b);
        rep.per_user_rates.push_back(std::log2(1.0 + t.sinr()));
        rep.rate_stderr.push_back(0.0);
    }
    rep.multicast_rate = *std::min_element(rep.per_user_rates.begin(), rep.per_user_rates.end());
    return rep;
}

std::vector<UserStats> user_stats_for(const SystemConfig &cfg, std::span<const double> alphas)
{
    const auto stats = equiv_channel_stats(cfg.l_per_sub, cfg.beta, cfg.k_users, cfg.m_ph);
    std::vector<UserStats> users;
    users.reserve(alphas.size());
    for (double a : alphas)
        users.push_back(estimate_stats(a, stats, cfg.tau_p, cfg.rho_p));
    return users;
}

RateReport analytic_rates(const SystemConfig &cfg, std::span<const double> alphas, std::span<const double> etas)
{
    const auto stats = equiv_channel_stats(cfg.l_per_sub, cfg.beta, cfg.k_users, cfg.m_ph);
    const auto users = user_stats_for(cfg, alphas);
    return multicast_rate(cfg.rho, cfg.n_rf, stats, users, etas);
}

RateReport monte_carlo_sinr(std::span<const UserStats> users, std::span<const double> etas, double rho, int n_rf,
                            const MonteCarloOptions &options)
{
    if (options.trials < 1)
        throw std::invalid_argument("monte_carlo_sinr: trials must be at least 1");
    const auto c = precoder_weights(users, etas);
    const std::size_t k_users = users.size();
    const auto nrf = static_cast<std::size_t>(n_rf);
    const double amp = std::sqrt(rho);
    const std::size_t chunks = (options.trials + kMcChunk - 1) / kMcChunk;

    std::vector<std::vector<ComplexRunningStats>> partial(chunks, std::vector<ComplexRunningStats>(k_users));
    parallel_for(
        chunks,
        [&](std::size_t chunk) {
            Rng rng(derive_seed(options.seed, chunk));
            const std::size_t begin = chunk * kMcChunk;
            const std::size_t end = std::min(options.trials, begin + kMcChunk);
            ComplexMatrix est(nrf, k_users);
            CVector w(nrf);
            auto &acc = partial[chunk];
            for (std::size_t t = begin; t < end; ++t)
            {
                std::fill(w.begin(), w.end(), cplx{});
                for (std::size_t i = 0; i < k_users; ++i)
                    for (std::size_t n = 0; n < nrf; ++n)
                    {
                        const cplx g = users[i].u_p + rng.complex_normal(users[i].delta_p_sq);
                        est(n, i) = g;
                        w[n] += c[i] * std::conj(g);
                    }
                for (std::size_t k = 0; k < k_users; ++k)
                {
                    cplx z{};
                    for (std::size_t n = 0; n < nrf; ++n)
                        z += (est(n, k) + rng.complex_normal(users[k].delta_e_sq)) * w[n];
                    acc[k].add(amp * z);
                }
            }
        },
        options.workers);

    std::vector<ComplexRunningStats> total(k_users);
    merge_chunks(partial, total);
    return report_from_samples(total);
}

RateReport simulate_end_to_end(const SystemConfig &cfg, const LargeScaleProfile &profile, BeamMode mode,
                               const EndToEndOptions &options)
{
    if (options.trials < 1)
        throw std::invalid_argument("simulate_end_to_end: trials must be at least 1");
    const std::size_t k_users = profile.alphas.size();
    if (k_users != static_cast<std::size_t>(cfg.k_users))
        throw std::invalid_argument("profile size does not match k_users");
    const auto nrf = static_cast<std::size_t>(cfg.n_rf);

    std::vector<double> etas = options.etas.value_or(std::vector<double>(k_users, 1.0 / static_cast<double>(k_users)));
    const auto stats = equiv_channel_stats(cfg.l_per_sub, cfg.beta, cfg.k_users, cfg.m_ph);
    const auto users = user_stats_for(cfg, profile.alphas);
    const auto c = precoder_weights(users, etas);
    const auto pilots = pilot_matrix(cfg.k_users);
    const double amp = std::sqrt(cfg.rho);

    std::optional<Codebook> codebook;
    std::optional<BisectionTrainer> trainer;
    std::vector<double> train_powers;
    if (mode == BeamMode::trained)
    {
        codebook = enumerate_codebook(cfg.n_total, cfg.m_ph, cfg.beta);
        trainer.emplace(*codebook);
        for (double a : profile.alphas)
            train_powers.push_back(training_power(a, cfg.n_total, cfg.eps_r));
    }

    const bool dumping = options.channel_dump || options.estimation_dump;
    const std::size_t chunks = (options.trials + kE2eChunk - 1) / kE2eChunk;
    std::vector<std::vector<ComplexRunningStats>> partial(chunks, std::vector<ComplexRunningStats>(k_users));

    parallel_for(
        chunks,
        [&](std::size_t chunk) {
            Rng rng(derive_seed(options.seed, chunk));
            const std::size_t begin = chunk * kE2eChunk;
            const std::size_t end = std::min(options.trials, begin + kE2eChunk);
            auto &acc = partial[chunk];
            ComplexMatrix equiv(nrf, k_users);
            CVector w(nrf), tmp(nrf);
            for (std::size_t t = begin; t < end; ++t)
            {
                auto real = sample_small_scale(rng, cfg.n_total, cfg.k_users);
                apply_large_scale(real, profile.alphas);
                if (options.channel_dump)
                    write_channel_rows(*options.channel_dump, t, real);

                Beam beam;
                if (mode == BeamMode::trained)
                {
                    const auto measure = make_power_measure(real, cfg.n_rf, train_powers, rng);
                    beam = trainer->run(measure).beam;
                    // Global phase is invisible to power measurements; pick the
                    // grid rotation that aligns the multicast sum.
                    cplx aligned{};
                    for (std::size_t n = 0; n < real.elements(); ++n)
                    {
                        cplx hs{};
                        for (std::size_t k = 0; k < k_users; ++k)
                            hs += real.h(n, k);
                        aligned += beam.coefficients()[n] * hs;
                    }
                    int best_shift = 0;
                    double best = -1.0;
                    for (int m = 0; m < cfg.m_ph; ++m)
                    {
                        const double v = (std::polar(1.0, 2.0 * std::numbers::pi * m / cfg.m_ph) * aligned).real();
                        if (v > best)
                        {
                            best = v;
                            best_shift = m;
                        }
                    }
                    auto idx = beam.phase_indices();
                    for (auto &x : idx)
                        x = (x + best_shift) % cfg.m_ph;
                    beam = Beam::discrete(std::move(idx), cfg.m_ph, cfg.beta);
                }
                else
                {
                    beam = quantize_beam(ideal_beam(real, cfg.beta), cfg.m_ph);
                }

                const Combiner comb = combiner_from_beam(beam, cfg.n_rf, cfg.l_per_sub);
                for (std::size_t k = 0; k < k_users; ++k)
                    comb.apply(real.g.col(k), equiv.col(k));

                const PilotBlock block = receive_pilots(equiv, cfg.tau_p, cfg.rho_p, pilots, rng);
                std::fill(w.begin(), w.end(), cplx{});
                for (std::size_t i = 0; i < k_users; ++i)
                {
                    const CVector est =
                        mmse_estimate(block.despread.col(i), profile.alphas[i], stats, cfg.tau_p, cfg.rho_p);
                    for (std::size_t n = 0; n < nrf; ++n)
                        w[n] += c[i] * std::conj(est[n]);
                    if (options.estimation_dump)
                    {
                        for (std::size_t n = 0; n < nrf; ++n)
                            tmp[n] = equiv(n, i) - est[n];
                        write_estimation_rows(*options.estimation_dump, t, i, est, tmp);
                    }
                }
                for (std::size_t k = 0; k < k_users; ++k)
                    acc[k].add(amp * dot_t(equiv.col(k), w));
            }
        },
        dumping ? 1u : options.workers);

    std::vector<ComplexRunningStats> total(k_users);
    merge_chunks(partial, total);
    return report_from_samples(total);
}

void write_rate_sweep_rows(std::ostream &out, const std::string &sweep_var, double value, const RateReport &analytic,
                           const RateReport &simulated)
{
    char buf[256];
    const std::size_t k_users = analytic.per_user_rates.size();
    for (std::size_t k = 0; k < k_users; ++k)
    {
        std::snprintf(buf, sizeof buf, "%s,%.10g,%zu,%.10g,%.10g,%.10g\n", sweep_var.c_str(), value, k,
                      analytic.per_user_rates[k], simulated.per_user_rates[k], simulated.rate_stderr[k]);
        out << buf;
    }
    const auto worst = static_cast<std::size_t>(
        std::min_element(simulated.per_user_rates.begin(), simulated.per_user_rates.end()) -
        simulated.per_user_rates.begin());
    std::snprintf(buf, sizeof buf, "%s,%.10g,min,%.10g,%.10g,%.10g\n", sweep_var.c_str(), value,
                  analytic.multicast_rate, simulated.multicast_rate, simulated.rate_stderr[worst]);
    out << buf;
}

} // namespace pmscast
