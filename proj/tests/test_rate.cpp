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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pmscast/rate.hpp"
#include "pmscast/stats.hpp"

using namespace pmscast;

namespace
{

const ChannelStats kUnit{1.0, 1.0, 0.0, 0.0, 0.0};

// K = 1, alpha = 1, u = delta^2 = 1, perfect estimation.
std::vector<UserStats> hand_user() { return {UserStats{1.0, 1.0, 1.0, 0.0}}; }

double sinr_of(const RateReport &r, std::size_t k)
{
    return r.a_terms[k] * r.a_terms[k] / (r.b_terms[k] + 1.0);
}

struct Scenario
{
    ChannelStats stats;
    std::vector<UserStats> users;
    std::vector<double> etas;
    double rho;
    int n_rf;
};

Scenario random_scenario(Rng &rng)
{
    Scenario s;
    const int k = 1 + static_cast<int>(rng.below(6));
    s.n_rf = 1 + static_cast<int>(rng.below(6));
    const int l = 4 + static_cast<int>(rng.below(28));
    const int m = 2 + static_cast<int>(rng.below(6));
    s.stats = equiv_channel_stats(l, 0.01 + 0.09 * rng.uniform(), k, m);
    s.rho = std::pow(10.0, 1.0 + 3.0 * rng.uniform());
    double total = 0.0;
    for (int i = 0; i < k; ++i)
    {
        const double alpha = std::pow(10.0, -1.0 * rng.uniform());
        s.users.push_back(estimate_stats(alpha, s.stats, k, std::pow(10.0, 3.0 * rng.uniform())));
        s.etas.push_back(0.2 + rng.uniform());
        total += s.etas.back();
    }
    for (auto &e : s.etas)
        e /= total;
    return s;
}

SystemConfig small_config(int n_rf)
{
    SystemConfig cfg;
    cfg.n_rf = n_rf;
    cfg.l_per_sub = 8;
    cfg.n_total = n_rf * 8;
    cfg.k_users = cfg.tau_p = 8;
    cfg.m_ph = 2;
    cfg.beta = 0.01;
    return validate_config(cfg);
}

} // namespace

TEST_CASE("hand-expanded single-user case")
{
    const auto users = hand_user();
    const std::vector<double> eta{1.0};
    const auto t = sinr_terms(1.0, 2, kUnit, users, eta, 0);
    CHECK(t.a * t.a == doctest::Approx(8.0));
    CHECK(t.b == doctest::Approx(3.0));
    CHECK(t.sinr() == doctest::Approx(2.0));
    CHECK(rate_user(1.0, 2, kUnit, users, eta, 0) == doctest::Approx(std::log2(3.0)));
    CHECK(rate_user(1.0, 2, kUnit, users, eta, 0) == doctest::Approx(1.58496).epsilon(1e-5));
}

TEST_CASE("no transmit power gives no rate")
{
    Rng rng(1);
    const auto s = random_scenario(rng);
    for (std::size_t k = 0; k < s.users.size(); ++k)
        CHECK(rate_user(0.0, s.n_rf, s.stats, s.users, s.etas, k) == 0.0);
}

TEST_CASE("vanishing estimate variance is a continuous limit")
{
    const ChannelStats st{0.5, 0.2, 0.0, 0.0, 0.0};
    std::vector<UserStats> exact{{1.0, 0.5, 0.0, 0.2}, {2.0, 0.5 * std::sqrt(2.0), 0.0, 0.4}};
    const std::vector<double> eta{0.5, 0.5};
    const double at_zero = rate_user(10.0, 4, st, exact, eta, 0);
    CHECK(std::isfinite(at_zero));
    auto nearly = exact;
    nearly[0].delta_p_sq = nearly[1].delta_p_sq = 1e-12;
    CHECK(rate_user(10.0, 4, st, nearly, eta, 0) == doctest::Approx(at_zero).epsilon(1e-9));
}

TEST_CASE("degenerate statistics are reported")
{
    const std::vector<UserStats> users{{1.0, 0.0, 0.0, 1.0}};
    const std::vector<double> eta{1.0};
    CHECK_THROWS_AS(rate_user(1.0, 1, kUnit, users, eta, 0), std::domain_error);
}

TEST_CASE("multicast rate is the minimum over users")
{
    Rng rng(2);
    for (int t = 0; t < 50; ++t)
    {
        const auto s = random_scenario(rng);
        const auto r = multicast_rate(s.rho, s.n_rf, s.stats, s.users, s.etas);
        CHECK(r.multicast_rate == *std::min_element(r.per_user_rates.begin(), r.per_user_rates.end()));
        for (double x : r.per_user_rates)
            CHECK(x >= 0.0);
    }
}

TEST_CASE("identical users share one rate; K = 1 matches the single-user rate")
{
    const auto st = equiv_channel_stats(8, 0.01, 4, 2);
    const auto u = estimate_stats(1e-6, st, 4, 1e8);
    const std::vector<UserStats> users(4, u);
    const std::vector<double> etas(4, 0.25);
    const auto r = multicast_rate(1e10, 4, st, users, etas);
    for (double x : r.per_user_rates)
        CHECK(x == doctest::Approx(r.multicast_rate).epsilon(1e-14));

    const std::vector<UserStats> single{u};
    const std::vector<double> one{1.0};
    CHECK(multicast_rate(1e10, 4, st, single, one).multicast_rate == rate_user(1e10, 4, st, single, one, 0));
}

TEST_CASE("weakening the weakest user lowers the multicast rate")
{
    const auto st = equiv_channel_stats(8, 0.01, 3, 2);
    std::vector<UserStats> users;
    for (double a : {1e-6, 2e-6, 4e-6})
        users.push_back(estimate_stats(a, st, 3, 1e8));
    const std::vector<double> etas(3, 1.0 / 3.0);
    const double before = multicast_rate(1e10, 4, st, users, etas).multicast_rate;
    users[0] = estimate_stats(0.5e-6, st, 3, 1e8);
    CHECK(multicast_rate(1e10, 4, st, users, etas).multicast_rate <= before);
}

TEST_CASE("a user's rate grows with its own path-loss coefficient")
{
    const auto st = equiv_channel_stats(8, 0.01, 3, 2);
    const std::vector<double> etas(3, 1.0 / 3.0);
    for (double rho_p : {1e6, 1e8, 1e12})
    {
        double prev = -1.0;
        for (double a : {1e-8, 1e-7, 1e-6, 1e-5, 1e-4})
        {
            const std::vector<UserStats> users{estimate_stats(a, st, 3, rho_p), estimate_stats(2e-6, st, 3, rho_p),
                                               estimate_stats(4e-6, st, 3, rho_p)};
            const double r = rate_user(1e10, 4, st, users, etas, 0);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("weakening a non-binding user can raise the multicast rate")
{
    // Under a fixed split the other users see less leakage from a weaker
    // user's precoder, so the minimum is not monotone in every coefficient.
    const auto st = equiv_channel_stats(8, 0.01, 3, 2);
    std::vector<UserStats> users;
    for (double a : {1e-6, 2e-6, 4e-6})
        users.push_back(estimate_stats(a, st, 3, 1e8));
    const std::vector<double> etas(3, 1.0 / 3.0);
    const double before = multicast_rate(1e10, 4, st, users, etas).multicast_rate;
    users[1] = estimate_stats(1e-6, st, 3, 1e8);
    CHECK(multicast_rate(1e10, 4, st, users, etas).multicast_rate > before);
}

TEST_CASE("rate grows with RF chains and with transmit power")
{
    Rng rng(3);
    for (int t = 0; t < 20; ++t)
    {
        const auto s = random_scenario(rng);
        for (std::size_t k = 0; k < s.users.size(); ++k)
        {
            double prev = -1.0;
            for (int n_rf : {1, 2, 4, 8, 16, 64})
            {
                const double r = rate_user(s.rho, n_rf, s.stats, s.users, s.etas, k);
                CHECK(r > prev);
                prev = r;
            }
            prev = -1.0;
            for (double rho : {0.1, 1.0, 10.0, 100.0, 1e3})
            {
                const double r = rate_user(rho, s.n_rf, s.stats, s.users, s.etas, k);
                CHECK(r > prev);
                prev = r;
            }
        }
    }
}

TEST_CASE("allocations are scale free on the simplex")
{
    Rng rng(4);
    const auto s = random_scenario(rng);
    auto scaled = s.etas;
    double total = 0.0;
    for (auto &e : scaled)
        total += (e *= 3.7);
    for (auto &e : scaled)
        e /= total;
    const auto a = multicast_rate(s.rho, s.n_rf, s.stats, s.users, s.etas);
    const auto b = multicast_rate(s.rho, s.n_rf, s.stats, s.users, scaled);
    for (std::size_t k = 0; k < a.per_user_rates.size(); ++k)
        CHECK(b.per_user_rates[k] == doctest::Approx(a.per_user_rates[k]).epsilon(1e-12));
}

TEST_CASE("Monte Carlo oracle on the hand case")
{
    const auto users = hand_user();
    const std::vector<double> eta{1.0};
    const auto mc = monte_carlo_sinr(users, eta, 1.0, 2, {1000000, 17, 0});
    CHECK(mc.method == RateMethod::monte_carlo);
    CHECK(sinr_of(mc, 0) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Monte Carlo oracle with deterministic channels")
{
    const std::vector<UserStats> users{{1.0, 0.7, 0.0, 0.0}, {1.0, 1.3, 0.0, 0.0}};
    const std::vector<double> etas{0.4, 0.6};
    const auto mc = monte_carlo_sinr(users, etas, 2.0, 3, {1, 5, 0});
    const auto an = multicast_rate(2.0, 3, ChannelStats{1.0, 0.0, 0.0, 0.0, 0.0}, users, etas);
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(mc.a_terms[k] == doctest::Approx(an.a_terms[k]).epsilon(1e-12));
        CHECK(mc.b_terms[k] == 0.0);
    }
}

TEST_CASE("Monte Carlo oracle agrees with the closed form")
{
    Rng rng(5);
    for (int t = 0; t < 5; ++t)
    {
        const auto s = random_scenario(rng);
        const auto an = multicast_rate(s.rho, s.n_rf, s.stats, s.users, s.etas);
        const auto mc = monte_carlo_sinr(s.users, s.etas, s.rho, s.n_rf, {200000, 100 + static_cast<std::uint64_t>(t), 0});
        for (std::size_t k = 0; k < s.users.size(); ++k)
            CHECK(sinr_of(mc, k) == doctest::Approx(sinr_of(an, k)).epsilon(0.03));
    }
}

TEST_CASE("Monte Carlo is deterministic and independent of the worker count")
{
    Rng rng(6);
    const auto s = random_scenario(rng);
    const auto a = monte_carlo_sinr(s.users, s.etas, s.rho, s.n_rf, {50000, 9, 1});
    const auto b = monte_carlo_sinr(s.users, s.etas, s.rho, s.n_rf, {50000, 9, 4});
    CHECK(a.a_terms == b.a_terms);
    CHECK(a.b_terms == b.b_terms);
    const auto c = monte_carlo_sinr(s.users, s.etas, s.rho, s.n_rf, {50000, 10, 1});
    CHECK(a.a_terms != c.a_terms);
}

TEST_CASE("halving the trials inflates the spread of A by about sqrt 2")
{
    const auto users = hand_user();
    const std::vector<double> eta{1.0};
    RunningStats full, half;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        full.add(monte_carlo_sinr(users, eta, 1.0, 2, {4000, 1000 + seed, 1}).a_terms[0]);
        half.add(monte_carlo_sinr(users, eta, 1.0, 2, {2000, 5000 + seed, 1}).a_terms[0]);
    }
    const double ratio = std::sqrt(half.sample_variance() / full.sample_variance());
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("end-to-end simulation without transmit power")
{
    auto cfg = small_config(2);
    cfg.rho = 0.0;
    Rng rng(7);
    const auto profile = sample_user_positions(rng, cfg.k_users, cfg.cell_radius, cfg.pathloss_exp);
    EndToEndOptions opts;
    opts.trials = 20;
    const auto r = simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, opts);
    for (double x : r.per_user_rates)
        CHECK(x == 0.0);
}

TEST_CASE("end-to-end rate grows with RF chains at every transmit power")
{
    Rng rng(8);
    const auto profile = sample_user_positions(rng, 8, 200.0, 3.0);
    EndToEndOptions opts;
    opts.trials = 1000;
    opts.seed = 4;
    for (double rho_dbm : {-30.0, -20.0, -10.0, 0.0, 10.0})
    {
        auto c2 = small_config(2);
        auto c4 = small_config(4);
        c2.rho = c4.rho = dbm_to_normalized_snr(rho_dbm, noise_floor_dbm(c2));
        const double r2 = simulate_end_to_end(c2, profile, BeamMode::ideal_quantized, opts).multicast_rate;
        const double r4 = simulate_end_to_end(c4, profile, BeamMode::ideal_quantized, opts).multicast_rate;
        CHECK(r4 > r2);
    }
}

TEST_CASE("end-to-end rate saturates at high transmit power")
{
    Rng rng(9);
    const auto profile = sample_user_positions(rng, 8, 200.0, 3.0);
    EndToEndOptions opts;
    opts.trials = 1000;
    std::vector<double> rates;
    for (double rho_dbm : {10.0, 30.0, 50.0, 70.0})
    {
        auto cfg = small_config(4);
        cfg.rho = dbm_to_normalized_snr(rho_dbm, noise_floor_dbm(cfg));
        rates.push_back(simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, opts).multicast_rate);
    }
    for (double r : rates)
        CHECK(std::isfinite(r));
    CHECK(std::abs(rates[3] - rates[2]) < 0.01 * rates[3]);
    CHECK(rates[3] < 2.0 * rates[0]);
}

TEST_CASE("end-to-end simulation tracks the closed form")
{
    const auto cfg = small_config(4);
    Rng rng(10);
    const auto profile = sample_user_positions(rng, cfg.k_users, cfg.cell_radius, cfg.pathloss_exp);
    EndToEndOptions opts;
    opts.trials = 4000;
    const auto sim = simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, opts);
    const std::vector<double> etas(8, 0.125);
    const auto an = analytic_rates(cfg, profile.alphas, etas);
    CHECK(sim.multicast_rate == doctest::Approx(an.multicast_rate).epsilon(0.1));
}

TEST_CASE("end-to-end simulation is reproducible and worker independent")
{
    const auto cfg = small_config(2);
    Rng rng(11);
    const auto profile = sample_user_positions(rng, cfg.k_users, cfg.cell_radius, cfg.pathloss_exp);
    EndToEndOptions a;
    a.trials = 100;
    a.seed = 77;
    a.workers = 1;
    EndToEndOptions b = a;
    b.workers = 3;
    const auto ra = simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, a);
    const auto rb = simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, b);
    CHECK(ra.per_user_rates == rb.per_user_rates);
    CHECK(ra.b_terms == rb.b_terms);
}

TEST_CASE("trained beams run on small surfaces and respect the codebook cap")
{
    SystemConfig cfg;
    cfg.n_rf = 1;
    cfg.l_per_sub = 4;
    cfg.n_total = 4;
    cfg.k_users = cfg.tau_p = 4;
    cfg = validate_config(cfg);
    Rng rng(12);
    const auto profile = sample_user_positions(rng, 4, 200.0, 3.0);
    EndToEndOptions opts;
    opts.trials = 50;
    const auto r = simulate_end_to_end(cfg, profile, BeamMode::trained, opts);
    CHECK(r.multicast_rate > 0.0);

    const auto big = small_config(4);
    const auto big_profile = sample_user_positions(rng, 8, 200.0, 3.0);
    CHECK_THROWS_AS(simulate_end_to_end(big, big_profile, BeamMode::trained, opts), std::length_error);
}

TEST_CASE("side outputs from the end-to-end run")
{
    SystemConfig cfg;
    cfg.n_rf = 2;
    cfg.l_per_sub = 2;
    cfg.n_total = 4;
    cfg.k_users = cfg.tau_p = 2;
    cfg = validate_config(cfg);
    Rng rng(13);
    const auto profile = sample_user_positions(rng, 2, 200.0, 3.0);
    std::ostringstream channels, estimates;
    EndToEndOptions opts;
    opts.trials = 3;
    opts.channel_dump = &channels;
    opts.estimation_dump = &estimates;
    simulate_end_to_end(cfg, profile, BeamMode::ideal_quantized, opts);
    const std::string ch = channels.str(), est = estimates.str();
    CHECK(std::count(ch.begin(), ch.end(), '\n') == 3 * 4 * 2);
    CHECK(std::count(est.begin(), est.end(), '\n') == 3 * 2 * 2);
}

TEST_CASE("rate sweep rows")
{
    RateReport an, mc;
    an.per_user_rates = {1.0, 2.0};
    an.multicast_rate = 1.0;
    mc.per_user_rates = {1.1, 1.9};
    mc.multicast_rate = 1.1;
    mc.rate_stderr = {0.01, 0.02};
    std::ostringstream out;
    write_rate_sweep_rows(out, "rho", 5.0, an, mc);
    CHECK(out.str() == "rho,5,0,1,1.1,0.01\nrho,5,1,2,1.9,0.02\nrho,5,min,1,1.1,0.01\n");
}
