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

#include "pmscast/powercontrol.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "pmscast/rng.hpp"

namespace pmscast
{

PowerAllocation equal_allocation(int k_users)
{
    if (k_users < 1)
        throw std::invalid_argument("equal_allocation: k_users must be at least 1");
    return {std::vector<double>(static_cast<std::size_t>(k_users), 1.0 / k_users), std::nullopt};
}

PowerAllocation large_nrf_allocation(std::span<const UserStats> users)
{
    if (users.empty())
        throw std::invalid_argument("large_nrf_allocation: at least one user required");
    std::vector<double> weights;
    weights.reserve(users.size());
    for (const auto &us : users)
    {
        if (!(us.delta_p_sq > 0.0))
            throw std::domain_error("degenerate estimate variance");
        weights.push_back(us.alpha * (us.u_p * us.u_p + us.delta_p_sq) / (us.delta_p_sq * us.delta_p_sq));
    }
    const double phi = std::accumulate(weights.begin(), weights.end(), 0.0);
    PowerAllocation out{std::move(weights), phi};
    for (auto &w : out.etas)
        w /= phi;
    return out;
}

MaxMinResult numeric_maxmin(const RateFn &rate_fn, int k_users, const MaxMinOptions &options)
{
    if (k_users < 1)
        throw std::invalid_argument("numeric_maxmin: k_users must be at least 1");
    if (options.budget < 1)
        throw std::invalid_argument("numeric_maxmin: budget must be at least 1");
    const auto k = static_cast<std::size_t>(k_users);

    auto min_of = [](const std::vector<double> &r) { return *std::min_element(r.begin(), r.end()); };

    MaxMinResult res;
    res.allocation = equal_allocation(k_users);
    std::vector<double> rates = rate_fn(res.allocation.etas);
    res.min_rate = min_of(rates);
    res.evaluations = 1;
    if (k == 1)
        return res;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t from = 0; from < k; ++from)
        for (std::size_t to = 0; to < k; ++to)
            if (from != to)
                pairs.emplace_back(from, to);
    Rng rng(options.seed);
    std::shuffle(pairs.begin(), pairs.end(), rng.engine());

    std::vector<double> eta = res.allocation.etas;
    std::vector<double> trial(k);
    std::vector<std::size_t> order(k);

    // Moves `delta` from `from` to the receivers and keeps the result if the
    // minimum rate strictly improves.
    auto try_move = [&](std::size_t from, std::span<const std::size_t> receivers, double step) {
        const double delta = std::min(step, eta[from]);
        if (delta <= 0.0 || res.evaluations >= options.budget)
            return false;
        trial = eta;
        trial[from] -= delta;
        for (std::size_t r : receivers)
            trial[r] += delta / static_cast<double>(receivers.size());
        const double sum = std::accumulate(trial.begin(), trial.end(), 0.0);
        for (auto &x : trial)
            x /= sum;
        auto r = rate_fn(trial);
        ++res.evaluations;
        const double m = min_of(r);
        if (m <= res.min_rate)
            return false;
        res.min_rate = m;
        eta = trial;
        rates = std::move(r);
        return true;
    };

    double step = options.initial_step;
    while (step >= options.final_step && res.evaluations < options.budget)
    {
        bool improved = false;
        for (const auto &[from, to] : pairs)
        {
            const std::size_t receiver[1] = {to};
            improved |= try_move(from, receiver, step);
        }
        // Several users can share the minimum; feed the j weakest together.
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rates[a] < rates[b]; });
        for (std::size_t j = 2; j < k; ++j)
        {
            const std::vector<std::size_t> weakest(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j));
            for (std::size_t from = 0; from < k; ++from)
                if (std::find(weakest.begin(), weakest.end(), from) == weakest.end())
                    improved |= try_move(from, weakest, step);
        }
        if (res.evaluations >= options.budget)
            break;
        if (!improved)
            step *= 0.5;
    }
    res.allocation.etas = std::move(eta);
    return res;
}

void write_allocation_rows(std::ostream &out, std::span<const double> alphas, const PowerAllocation &allocation,
                           const std::string &method)
{
    char buf[160];
    for (std::size_t k = 0; k < allocation.etas.size(); ++k)
    {
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%s\n", k, k < alphas.size() ? alphas[k] : 0.0,
                      allocation.etas[k], method.c_str());
        out << buf;
    }
}

} // namespace pmscast
