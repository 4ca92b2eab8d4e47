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

#include "pmscast/channel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "pmscast/model.hpp"

namespace pmscast
{

LargeScaleProfile sample_user_positions(Rng &rng, int k_users, double radius, double pathloss_exp)
{
    if (k_users < 1 || !(radius > 0.0))
        throw std::invalid_argument("sample_user_positions: need k_users >= 1 and radius > 0");
    LargeScaleProfile profile;
    profile.alphas.reserve(static_cast<std::size_t>(k_users));
    profile.distances.reserve(static_cast<std::size_t>(k_users));
    for (int k = 0; k < k_users; ++k)
    {
        // Reject the measure-zero draw at the origin so alpha stays finite.
        double u = rng.uniform();
        while (u == 0.0)
            u = rng.uniform();
        const double r = radius * std::sqrt(u);
        profile.distances.push_back(r);
        profile.alphas.push_back(path_loss(r, pathloss_exp));
    }
    return profile;
}

ChannelRealization sample_small_scale(Rng &rng, int n_elements, int k_users)
{
    if (n_elements < 1 || k_users < 1)
        throw std::invalid_argument("sample_small_scale: dimensions must be positive");
    const auto n = static_cast<std::size_t>(n_elements);
    const auto k = static_cast<std::size_t>(k_users);
    ChannelRealization out{ComplexMatrix(n, k), ComplexMatrix(), rng.seed()};
    for (std::size_t user = 0; user < k; ++user)
        for (auto &x : out.h.col(user))
            x = rng.complex_normal();
    out.g = out.h;
    return out;
}

void apply_large_scale(ChannelRealization &realization, std::span<const double> alphas)
{
    if (alphas.size() != realization.users())
        throw std::invalid_argument("apply_large_scale: one alpha per user required");
    realization.g = realization.h;
    for (std::size_t k = 0; k < alphas.size(); ++k)
    {
        const double s = std::sqrt(alphas[k]);
        for (auto &x : realization.g.col(k))
            x *= s;
    }
}

ChannelRealization draw_channel(std::uint64_t seed, int n_elements, const LargeScaleProfile &profile)
{
    Rng rng(seed);
    auto out = sample_small_scale(rng, n_elements, static_cast<int>(profile.alphas.size()));
    apply_large_scale(out, profile.alphas);
    return out;
}

double training_power(double alpha, int n_elements, double eps_r)
{
    return eps_r / (static_cast<double>(n_elements) * alpha);
}

void write_channel_rows(std::ostream &out, std::size_t trial, const ChannelRealization &realization)
{
    char buf[128];
    for (std::size_t n = 0; n < realization.elements(); ++n)
        for (std::size_t k = 0; k < realization.users(); ++k)
        {
            const cplx v = realization.h(n, k);
            std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.17g,%.17g\n", trial, n, k, v.real(), v.imag());
            out << buf;
        }
}

} // namespace pmscast
