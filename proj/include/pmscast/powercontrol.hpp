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

#ifndef PMSCAST_POWERCONTROL_HPP
#define PMSCAST_POWERCONTROL_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pmscast/estimation.hpp"
#include "pmscast/rate.hpp"

namespace pmscast
{

/// eta_k = 1/K.
PowerAllocation equal_allocation(int k_users);

/// Closed-form allocation for many RF chains:
/// eta_k = alpha_k (u_p^2 + delta_p^2) / (phi delta_p^4), phi normalising the
/// sum to one. Throws std::domain_error("degenerate estimate variance") if any
/// delta_p^2 is zero.
PowerAllocation large_nrf_allocation(std::span<const UserStats> users);

// Maps an allocation to per-user rates.
using RateFn = std::function<std::vector<double>(std::span<const double>)>;

struct MaxMinOptions
{
    std::size_t budget = 100000;  // rate_fn evaluations
    double initial_step = 1e-2;
    double final_step = 1e-4;
    std::uint64_t seed = 1;
};

struct MaxMinResult
{
    PowerAllocation allocation;
    double min_rate = 0.0;
    std::size_t evaluations = 0;
};

/// Pairwise coordinate exchange on the simplex starting from the equal split:
/// moves `step` of power from one user to another whenever that strictly
/// raises the minimum rate, halving the step when no move helps. The visiting
/// order of user pairs is shuffled with `seed`.
MaxMinResult numeric_maxmin(const RateFn &rate_fn, int k_users, const MaxMinOptions &options = {});

inline constexpr const char *kAllocationHeader = "user,alpha,eta,method";

void write_allocation_rows(std::ostream &out, std::span<const double> alphas, const PowerAllocation &allocation,
                           const std::string &method);

} // namespace pmscast

#endif
