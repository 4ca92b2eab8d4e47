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

#include "pmscast/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>

#include "pmscast/asymptotics.hpp"
#include "pmscast/beamtraining.hpp"
#include "pmscast/channel.hpp"
#include "pmscast/parallel.hpp"
#include "pmscast/powercontrol.hpp"
#include "pmscast/rng.hpp"
#include "pmscast/stats.hpp"

namespace pmscast
{

namespace
{

constexpr std::size_t kHarnessMaxMinBudget = 20000;

std::string join(const std::vector<std::string> &items)
{
    std::string out;
    for (const auto &s : items)
        out += (out.empty() ? "" : ", ") + s;
    return out;
}

int integral(const std::string &key, double value)
{
    if (!(std::floor(value) == value) || std::abs(value) > std::numeric_limits<int>::max())
        throw ConfigError(key + " must be an integer, got " + std::to_string(value));
    return static_cast<int>(value);
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string series_name(const std::string &kind, const std::string &label, const std::string &suffix = {})
{
    std::string out = kind;
    if (!label.empty())
        out += ":" + label;
    if (!suffix.empty())
        out += ":" + suffix;
    return out;
}

std::unique_ptr<std::ofstream> open_output(const std::string &path, const char *header)
{
    if (path.empty())
        return nullptr;
    auto out = std::make_unique<std::ofstream>(path);
    if (!*out)
        throw IoError("cannot open output file: " + path);
    *out << header << '\n';
    return out;
}

PowerAllocation allocation_for(PowerControl mode, const SystemConfig &cfg, std::span<const double> alphas,
                               std::uint64_t seed)
{
    switch (mode)
    {
    case PowerControl::equal:
        return equal_allocation(cfg.k_users);
    case PowerControl::large_nrf:
        return large_nrf_allocation(user_stats_for(cfg, alphas));
    case PowerControl::numeric:
    {
        const auto stats = equiv_channel_stats(cfg.l_per_sub, cfg.beta, cfg.k_users, cfg.m_ph);
        const auto users = user_stats_for(cfg, alphas);
        const RateFn fn = [&](std::span<const double> etas) {
            return multicast_rate(cfg.rho, cfg.n_rf, stats, users, etas).per_user_rates;
        };
        MaxMinOptions opts;
        opts.budget = kHarnessMaxMinBudget;
        opts.seed = seed;
        return numeric_maxmin(fn, cfg.k_users, opts).allocation;
    }
    }
    return equal_allocation(cfg.k_users);
}

double approximate_rate(Approximation a, const SystemConfig &cfg, std::span<const double> alphas)
{
    switch (a)
    {
    case Approximation::large_pilot:
        return rate_large_pilot(cfg, *std::min_element(alphas.begin(), alphas.end()));
    case Approximation::large_nrf:
        return rate_large_nrf(cfg, alphas);
    case Approximation::large_L:
        return rate_large_L(cfg);
    case Approximation::mph_limit:
        return rate_mph_limit(cfg);
    case Approximation::large_K:
        return rate_large_K(cfg);
    case Approximation::none:
        break;
    }
    return 0.0;
}

struct ProfileOutcome
{
    LargeScaleProfile profile;
    PowerAllocation allocation;
    RateReport analytic;
    RateReport numeric;
    double approximate = 0.0;
};

} // namespace

const std::vector<std::string> &sweepable_parameters()
{
    static const std::vector<std::string> keys{
        "n_rf",  "l_per_sub", "k_users",   "m_ph",        "beta",         "gamma",
        "rho",   "rho_dbm",   "rho_p",     "rho_p_dbm",   "eps_r",        "eps_r_dbm",
        "tau_c", "cell_radius", "pathloss_exp", "f_c",     "f_m",          "bandwidth",
        "noise_density_dbm_hz"};
    return keys;
}

SystemConfig apply_parameter(SystemConfig cfg, const std::string &key, double value)
{
    const double noise = noise_floor_dbm(cfg);
    if (key == "n_rf")
        cfg.n_rf = integral(key, value);
    else if (key == "l_per_sub")
        cfg.l_per_sub = integral(key, value);
    else if (key == "k_users")
        cfg.k_users = cfg.tau_p = integral(key, value);
    else if (key == "m_ph")
        cfg.m_ph = integral(key, value);
    else if (key == "beta")
        cfg.beta = value;
    else if (key == "gamma")
        cfg.gamma = value;
    else if (key == "rho")
        cfg.rho = value;
    else if (key == "rho_dbm")
        cfg.rho = dbm_to_normalized_snr(value, noise);
    else if (key == "rho_p")
        cfg.rho_p = value;
    else if (key == "rho_p_dbm")
        cfg.rho_p = dbm_to_normalized_snr(value, noise);
    else if (key == "eps_r")
        cfg.eps_r = value;
    else if (key == "eps_r_dbm")
        cfg.eps_r = dbm_to_normalized_snr(value, noise);
    else if (key == "tau_c")
        cfg.tau_c = integral(key, value);
    else if (key == "cell_radius")
        cfg.cell_radius = value;
    else if (key == "pathloss_exp")
        cfg.pathloss_exp = value;
    else if (key == "f_c")
        cfg.f_c = value;
    else if (key == "f_m")
        cfg.f_m = value;
    else if (key == "bandwidth")
        cfg.bandwidth = value;
    else if (key == "noise_density_dbm_hz")
        cfg.noise_density_dbm_hz = value;
    else
        throw ConfigError("unknown sweep parameter '" + key + "'; valid keys: " + join(sweepable_parameters()));

    if (key == "n_rf" || key == "l_per_sub")
        cfg.n_total = cfg.n_rf * cfg.l_per_sub;
    if ((key == "f_m" || key == "bandwidth") && cfg.f_m > 0.0 && cfg.bandwidth > 0.0)
        cfg.tau_c = coherence_symbols(cfg.f_m, cfg.bandwidth);
    return validate_config(cfg);
}

PowerControl parse_power_control(const std::string &name)
{
    if (name == "equal")
        return PowerControl::equal;
    if (name == "large_nrf")
        return PowerControl::large_nrf;
    if (name == "numeric")
        return PowerControl::numeric;
    throw ConfigError("unknown power_control '" + name + "'; valid: equal, large_nrf, numeric");
}

Approximation parse_approximation(const std::string &name)
{
    static const std::vector<std::pair<std::string, Approximation>> table{
        {"none", Approximation::none},       {"large_pilot", Approximation::large_pilot},
        {"large_nrf", Approximation::large_nrf}, {"large_L", Approximation::large_L},
        {"mph_limit", Approximation::mph_limit}, {"large_K", Approximation::large_K}};
    for (const auto &[key, value] : table)
        if (key == name)
            return value;
    throw ConfigError("unknown approximation '" + name +
                      "'; valid: none, large_pilot, large_nrf, large_L, mph_limit, large_K");
}

std::string to_string(Approximation a)
{
    switch (a)
    {
    case Approximation::none:
        return "none";
    case Approximation::large_pilot:
        return "large_pilot";
    case Approximation::large_nrf:
        return "large_nrf";
    case Approximation::large_L:
        return "large_L";
    case Approximation::mph_limit:
        return "mph_limit";
    case Approximation::large_K:
        return "large_K";
    }
    return "none";
}

BeamMode parse_beam_mode(const std::string &name)
{
    if (name == "ideal_quantized")
        return BeamMode::ideal_quantized;
    if (name == "trained")
        return BeamMode::trained;
    throw ConfigError("unknown beam_mode '" + name + "'; valid: ideal_quantized, trained");
}

void validate_plan(const ExperimentPlan &plan)
{
    if (plan.values.empty())
        throw ConfigError("sweep grid must not be empty");
    if (plan.trials < 1)
        throw ConfigError("trials must be at least 1");
    if (plan.profiles < 1)
        throw ConfigError("profiles must be at least 1");
    if (!plan.analytic && !plan.numeric && plan.approximation == Approximation::none)
        throw ConfigError("plan produces no series");
    if (!plan.rate_out.empty() && !(plan.analytic && plan.numeric))
        throw ConfigError("rate_out requires both the analytic and the numeric series");
    const auto &keys = sweepable_parameters();
    if (plan.sweep_var != "none" && std::find(keys.begin(), keys.end(), plan.sweep_var) == keys.end())
        throw ConfigError("unknown sweep parameter '" + plan.sweep_var + "'; valid keys: " + join(keys));
    validate_config(plan.base);
}

ExperimentPlan plan_from_config(const ConfigFile &file, std::optional<std::uint64_t> seed, bool full)
{
    const SimulationSettings &sim = file.simulation;
    ExperimentPlan plan;
    plan.scenario = "simulate";
    plan.base = file.system;
    plan.sweep_var = sim.sweep_var;
    if (plan.sweep_var == "none")
    {
        if (!sim.values.empty())
            throw ConfigError("values given without a sweep_var");
        plan.values = {0.0};
    }
    else
    {
        if (sim.values.empty())
            throw ConfigError("sweep_var '" + plan.sweep_var + "' needs a values list");
        plan.values = sim.values;
    }
    plan.trials = full ? sim.full_trials : sim.trials;
    plan.profiles = full ? sim.full_profiles : sim.profiles;
    plan.seed = seed.value_or(sim.seed.value_or(1));
    plan.profile_seed = sim.profile_seed;
    plan.beam_mode = parse_beam_mode(sim.beam_mode);
    plan.power_control = parse_power_control(sim.power_control);
    plan.approximation = parse_approximation(sim.approximation);
    plan.analytic = plan.numeric = false;
    for (const auto &s : sim.series)
    {
        if (s == "analytic")
            plan.analytic = true;
        else if (s == "numeric")
            plan.numeric = true;
        else if (s == "approximate")
        {
            if (plan.approximation == Approximation::none)
                throw ConfigError("series 'approximate' requires an approximation");
        }
        else
            throw ConfigError("unknown series '" + s + "'; valid: analytic, numeric, approximate");
    }
    plan.per_user = true;
    plan.workers = sim.workers;
    plan.channel_dump = sim.channel_dump;
    plan.estimation_dump = sim.estimation_dump;
    plan.allocation_out = sim.allocation_out;
    plan.rate_out = sim.rate_out;
    validate_plan(plan);
    return plan;
}

std::vector<ResultRow> run_scenario(const ExperimentPlan &plan)
{
    validate_plan(plan);
    auto channel_out = open_output(plan.channel_dump, kChannelDumpHeader);
    auto estimation_out = open_output(plan.estimation_dump, kEstimationDumpHeader);
    auto allocation_out = open_output(plan.allocation_out, kAllocationHeader);
    auto rate_out = open_output(plan.rate_out, kRateSweepHeader);

    std::vector<ResultRow> rows;
    for (std::size_t g = 0; g < plan.values.size(); ++g)
    {
        const double value = plan.values[g];
        const SystemConfig cfg =
            plan.sweep_var == "none" ? validate_config(plan.base) : apply_parameter(plan.base, plan.sweep_var, value);
        const auto k_users = static_cast<std::size_t>(cfg.k_users);

        std::vector<ProfileOutcome> outcomes(plan.profiles);
        parallel_for(
            plan.profiles,
            [&](std::size_t p) {
                auto &o = outcomes[p];
                Rng prng(derive_seed(plan.profile_seed, p));
                o.profile = sample_user_positions(prng, cfg.k_users, cfg.cell_radius, cfg.pathloss_exp);
                o.allocation = allocation_for(plan.power_control, cfg, o.profile.alphas, derive_seed(plan.seed, p));
                if (plan.analytic)
                    o.analytic = analytic_rates(cfg, o.profile.alphas, o.allocation.etas);
                if (plan.approximation != Approximation::none)
                    o.approximate = approximate_rate(plan.approximation, cfg, o.profile.alphas);
                if (plan.numeric)
                {
                    EndToEndOptions opts;
                    opts.trials = plan.trials;
                    opts.seed = derive_seed(plan.seed, p);
                    opts.workers = 1;
                    opts.etas = o.allocation.etas;
                    if (g == 0 && p == 0)
                    {
                        opts.channel_dump = channel_out.get();
                        opts.estimation_dump = estimation_out.get();
                    }
                    o.numeric = simulate_end_to_end(cfg, o.profile, plan.beam_mode, opts);
                }
            },
            plan.workers);

        if (allocation_out)
            write_allocation_rows(*allocation_out, outcomes.front().profile.alphas, outcomes.front().allocation,
                                  format_number(value));

        auto emit = [&](const std::string &series, std::uint64_t seed, auto pick_min, auto pick_user) {
            RunningStats min_stats;
            for (const auto &o : outcomes)
                min_stats.add(pick_min(o));
            rows.push_back({series, plan.sweep_var, value, "min", min_stats.mean, min_stats.stderr_of_mean(), seed});
            if (!plan.per_user)
                return;
            for (std::size_t k = 0; k < k_users; ++k)
            {
                RunningStats s;
                for (const auto &o : outcomes)
                    s.add(pick_user(o, k));
                rows.push_back({series, plan.sweep_var, value, std::to_string(k), s.mean, s.stderr_of_mean(), seed});
            }
        };

        if (plan.analytic)
            emit(
                series_name("analytic", plan.label), plan.profile_seed,
                [](const ProfileOutcome &o) { return o.analytic.multicast_rate; },
                [](const ProfileOutcome &o, std::size_t k) { return o.analytic.per_user_rates[k]; });
        if (plan.numeric)
            emit(
                series_name("numeric", plan.label), plan.seed,
                [](const ProfileOutcome &o) { return o.numeric.multicast_rate; },
                [](const ProfileOutcome &o, std::size_t k) { return o.numeric.per_user_rates[k]; });
        if (plan.approximation != Approximation::none)
        {
            RunningStats s;
            for (const auto &o : outcomes)
                s.add(o.approximate);
            rows.push_back({series_name("approximate", plan.label, to_string(plan.approximation)), plan.sweep_var,
                            value, "min", s.mean, s.stderr_of_mean(), plan.profile_seed});
        }

        if (rate_out)
        {
            RateReport analytic, numeric;
            analytic.per_user_rates.assign(k_users, 0.0);
            numeric.per_user_rates.assign(k_users, 0.0);
            numeric.rate_stderr.assign(k_users, 0.0);
            RunningStats amin, nmin;
            for (std::size_t k = 0; k < k_users; ++k)
            {
                RunningStats a, n;
                for (const auto &o : outcomes)
                {
                    a.add(o.analytic.per_user_rates[k]);
                    n.add(o.numeric.per_user_rates[k]);
                }
                analytic.per_user_rates[k] = a.mean;
                numeric.per_user_rates[k] = n.mean;
                numeric.rate_stderr[k] = n.stderr_of_mean();
            }
            for (const auto &o : outcomes)
            {
                amin.add(o.analytic.multicast_rate);
                nmin.add(o.numeric.multicast_rate);
            }
            analytic.multicast_rate = amin.mean;
            numeric.multicast_rate = nmin.mean;
            write_rate_sweep_rows(*rate_out, plan.sweep_var, value, analytic, numeric);
        }
    }

    for (auto *stream : {channel_out.get(), estimation_out.get(), allocation_out.get(), rate_out.get()})
        if (stream && !stream->flush())
            throw IoError("failed to write side output");
    return rows;
}

std::vector<ResultRow> run_sweep(const std::string &param, std::span<const double> values, ExperimentPlan plan)
{
    plan.sweep_var = param;
    plan.values.assign(values.begin(), values.end());
    return run_scenario(plan);
}

const std::vector<std::string> &figure_ids()
{
    static const std::vector<std::string> ids{"f2_rate_vs_snr",   "f3_rate_vs_L_beta", "f4_rate_vs_nrf",
                                              "f5_rate_vs_L_mph", "f6_rate_vs_mph",    "f7_rate_vs_K",
                                              "f_necs"};
    return ids;
}

namespace
{

SystemConfig figure_base(int n_rf, int l_per_sub, int k_users, int m_ph, double beta)
{
    SystemConfig cfg;
    cfg.n_rf = n_rf;
    cfg.l_per_sub = l_per_sub;
    cfg.n_total = n_rf * l_per_sub;
    cfg.k_users = cfg.tau_p = k_users;
    cfg.m_ph = m_ph;
    cfg.beta = beta;
    const double noise = noise_floor_dbm(cfg);
    cfg.rho = dbm_to_normalized_snr(-10.0, noise);
    cfg.rho_p = dbm_to_normalized_snr(-20.0, noise);
    return validate_config(cfg);
}

ExperimentPlan figure_plan(const std::string &id, const std::string &label, const SystemConfig &base,
                           const std::string &sweep_var, std::vector<double> values, std::uint64_t seed,
                           std::size_t counts, unsigned workers)
{
    ExperimentPlan plan;
    plan.scenario = id;
    plan.label = label;
    plan.base = base;
    plan.sweep_var = sweep_var;
    plan.values = std::move(values);
    plan.trials = plan.profiles = counts;
    plan.seed = seed;
    plan.workers = workers;
    return plan;
}

std::string label_of(const std::string &key, double v) { return key + "=" + format_number(v); }

// Normalised channel strength of the training schemes at N = 4, N_RF = 1,
// K = 4 over a sweep of the received training power.
std::vector<ResultRow> run_necs_figure(std::uint64_t seed, std::size_t channels, unsigned workers)
{
    const std::vector<double> eps_dbm{-110.0, -100.0, -90.0, -80.0, -70.0, -60.0, -50.0, -40.0, -30.0};
    const std::vector<std::string> schemes{"proposed", "exhaustive", "random", "quantized"};
    std::vector<ResultRow> rows;
    for (int m_ph : {2, 4})
    {
        const SystemConfig base = figure_base(1, 4, 4, m_ph, 0.01);
        const Codebook book = enumerate_codebook(base.n_total, m_ph, base.beta);
        const BisectionTrainer trainer(book);
        Rng prng(derive_seed(ExperimentPlan{}.profile_seed, 0));
        const auto profile = sample_user_positions(prng, base.k_users, base.cell_radius, base.pathloss_exp);

        for (double e : eps_dbm)
        {
            const SystemConfig cfg = apply_parameter(base, "eps_r_dbm", e);
            std::vector<double> powers;
            for (double a : profile.alphas)
                powers.push_back(training_power(a, cfg.n_total, cfg.eps_r));

            // strengths[t] = {ideal, proposed, exhaustive, random, quantized}
            std::vector<std::array<double, 5>> strengths(channels);
            parallel_for(
                channels,
                [&](std::size_t t) {
                    const auto real = draw_channel(derive_seed(seed, t), cfg.n_total, profile);
                    Rng rng(derive_seed(derive_seed(seed, t), 1));
                    const auto measure = make_power_measure(real, cfg.n_rf, powers, rng);
                    const Beam ideal = ideal_beam(real, cfg.beta);
                    auto &s = strengths[t];
                    s[0] = channel_strength(ideal, cfg.n_rf, real);
                    s[1] = channel_strength(trainer.run(measure).beam, cfg.n_rf, real);
                    s[2] = channel_strength(train_exhaustive(book, measure).beam, cfg.n_rf, real);
                    s[3] = channel_strength(random_beam(book, rng), cfg.n_rf, real);
                    s[4] = channel_strength(quantize_beam(ideal, m_ph), cfg.n_rf, real);
                },
                workers);

            double den = 0.0;
            for (const auto &s : strengths)
                den += s[0];
            for (std::size_t j = 0; j < schemes.size(); ++j)
            {
                double num = 0.0;
                for (const auto &s : strengths)
                    num += s[j + 1];
                const double ratio = num / den;
                // Ratio-estimator standard error.
                RunningStats resid;
                for (const auto &s : strengths)
                    resid.add(s[j + 1] - ratio * s[0]);
                const double mean_den = den / static_cast<double>(channels);
                const double se = std::sqrt(resid.sample_variance() / static_cast<double>(channels)) / mean_den;
                rows.push_back({series_name(schemes[j], label_of("m_ph", m_ph)), "eps_r_dbm", e, "all", ratio, se,
                                seed});
            }
        }
    }
    return rows;
}

} // namespace

std::vector<ExperimentPlan> figure_plans(const std::string &id, std::uint64_t seed, bool full, unsigned workers)
{
    const std::size_t desk = full ? 1000 : 200;
    const std::size_t reduced = full ? 1000 : 100;
    std::vector<ExperimentPlan> plans;

    if (id == "f2_rate_vs_snr")
    {
        for (int n_rf : {2, 4, 8})
            plans.push_back(figure_plan(id, label_of("n_rf", n_rf), figure_base(n_rf, 8, 8, 2, 0.01), "rho_dbm",
                                        {-30, -25, -20, -15, -10, -5, 0, 5, 10}, seed, desk, workers));
    }
    else if (id == "f3_rate_vs_L_beta")
    {
        for (double beta : {0.005, 0.01, 0.02})
        {
            auto plan = figure_plan(id, label_of("beta", beta), figure_base(4, 8, 8, 2, beta), "l_per_sub",
                                    {8, 16, 32, 64, 128}, seed, reduced, workers);
            plan.approximation = Approximation::large_L;
            plans.push_back(std::move(plan));
        }
    }
    else if (id == "f4_rate_vs_nrf")
    {
        for (double rho_p_dbm : {-20.0, -10.0})
        {
            auto base = figure_base(4, 8, 8, 2, 0.01);
            base = apply_parameter(base, "rho_p_dbm", rho_p_dbm);
            auto plan = figure_plan(id, label_of("rho_p_dbm", rho_p_dbm), base, "n_rf", {1, 2, 4, 8, 16, 32, 64},
                                    seed, reduced, workers);
            plan.power_control = PowerControl::large_nrf;
            plan.approximation = Approximation::large_nrf;
            plans.push_back(std::move(plan));
        }
    }
    else if (id == "f5_rate_vs_L_mph")
    {
        for (int m_ph : {2, 4, 20})
        {
            auto plan = figure_plan(id, label_of("m_ph", m_ph), figure_base(4, 100, 8, m_ph, 0.01), "l_per_sub",
                                    {16, 32, 64, 100, 128, 256, 512}, seed, desk, workers);
            plan.numeric = false;
            plan.approximation = Approximation::large_L;
            plans.push_back(std::move(plan));
        }
    }
    else if (id == "f6_rate_vs_mph")
    {
        for (int k_users : {4, 8})
        {
            const auto base = figure_base(4, 100, k_users, 2, 0.01);
            const std::vector<double> grid{2, 3, 4, 6, 8, 16, 32, 64};
            auto plan = figure_plan(id, label_of("k_users", k_users), base, "m_ph", grid, seed, desk, workers);
            plan.numeric = false;
            plan.approximation = Approximation::large_L;
            plans.push_back(plan);
            plan.analytic = false;
            plan.approximation = Approximation::mph_limit;
            plans.push_back(std::move(plan));
        }
    }
    else if (id == "f7_rate_vs_K")
    {
        for (int l : {100, 200})
        {
            const auto base = figure_base(4, l, 8, 2, 0.01);
            const std::vector<double> grid{2, 4, 8, 16, 20, 32, 40};
            auto plan = figure_plan(id, label_of("l_per_sub", l), base, "k_users", grid, seed, desk, workers);
            plan.numeric = false;
            plan.approximation = Approximation::large_K;
            plans.push_back(plan);
            plan.analytic = false;
            plan.approximation = Approximation::large_L;
            plans.push_back(plan);
            plan.numeric = true;
            plan.approximation = Approximation::none;
            plan.trials = full ? 200 : 50;
            plan.profiles = full ? 200 : 20;
            plans.push_back(std::move(plan));
        }
    }
    else if (id == "f_necs")
    {
        throw ConfigError("figure 'f_necs' has no rate plans");
    }
    else
    {
        std::string valid;
        for (const auto &f : figure_ids())
            valid += (valid.empty() ? "" : ", ") + f;
        throw ConfigError("unknown figure id '" + id + "'; valid: " + valid);
    }
    return plans;
}

std::vector<ResultRow> run_figure(const std::string &id, std::uint64_t seed, bool full, unsigned workers)
{
    if (id == "f_necs")
        return run_necs_figure(seed, full ? 1000 : 200, workers);
    std::vector<ResultRow> rows;
    for (const auto &plan : figure_plans(id, seed, full, workers))
    {
        auto part = run_scenario(plan);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

void write_results_csv(std::ostream &out, std::span<const ResultRow> rows)
{
    out << kResultsHeader << '\n';
    for (const auto &r : rows)
        out << r.series << ',' << r.sweep_var << ',' << format_number(r.sweep_value) << ',' << r.user_or_min << ','
            << format_number(r.mean) << ',' << format_number(r.stderr_value) << ',' << r.seed << '\n';
}

void write_results_file(const std::string &path, std::span<const ResultRow> rows)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open output file: " + path);
    write_results_csv(out, rows);
    if (!out.flush())
        throw IoError("failed to write output file: " + path);
}

} // namespace pmscast
