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

#ifndef PMSCAST_CHANNEL_HPP
#define PMSCAST_CHANNEL_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pmscast/linalg.hpp"
#include "pmscast/rng.hpp"

namespace pmscast
{

// Per-user path-loss coefficients and the distances they came from.
struct LargeScaleProfile
{
    std::vector<double> alphas;
    std::vector<double> distances;
};

// One coherence block. Column k of `h` is user k's unit-variance small-scale
// vector; column k of `g` is sqrt(alpha_k) times it.
struct ChannelRealization
{
    ComplexMatrix h;
    ComplexMatrix g;
    std::uint64_t seed = 0;

    std::size_t elements() const { return h.rows(); }
    std::size_t users() const { return h.cols(); }
};

/// Drops K users uniformly over a disk of the given radius (r = R sqrt(U)).
LargeScaleProfile sample_user_positions(Rng &rng, int k_users, double radius, double pathloss_exp);

/// Fills an N x K block with i.i.d. CN(0, 1) entries. `g` equals `h` until
/// apply_large_scale is called.
ChannelRealization sample_small_scale(Rng &rng, int n_elements, int k_users);

/// Sets g_k = sqrt(alpha_k) h_k.
void apply_large_scale(ChannelRealization &realization, std::span<const double> alphas);

/// Seeds a fresh generator, draws h and applies the profile.
ChannelRealization draw_channel(std::uint64_t seed, int n_elements, const LargeScaleProfile &profile);

/// Uplink training power giving average received power eps_r: eps_r / (N alpha).
double training_power(double alpha, int n_elements, double eps_r);

/// Writes rows `trial,element,user,re_h,im_h` (no header).
void write_channel_rows(std::ostream &out, std::size_t trial, const ChannelRealization &realization);

inline constexpr const char *kChannelDumpHeader = "trial,element,user,re_h,im_h";

} // namespace pmscast

#endif
