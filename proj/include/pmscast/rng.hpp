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

#ifndef PMSCAST_RNG_HPP
#define PMSCAST_RNG_HPP

#include <cstdint>
#include <random>

#include "pmscast/linalg.hpp"

namespace pmscast
{

// Derives an independent sub-stream seed from a parent seed and a stream index
// (splitmix64 finalizer applied to the pair). Used to give every trial, profile
// and grid point its own generator so results do not depend on worker count.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

// Thin wrapper over std::mt19937_64 with the distributions used by the
// simulator. Not thread-safe; give each worker its own instance.
class Rng
{
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    double uniform();                              // [0, 1)
    double normal();                               // N(0, 1)
    cplx complex_normal(double variance = 1.0);    // CN(0, variance)
    std::uint64_t below(std::uint64_t n);          // uniform in [0, n)

    std::mt19937_64 &engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace pmscast

#endif
