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

#ifndef PMSCAST_STATS_HPP
#define PMSCAST_STATS_HPP

#include <cmath>
#include <cstddef>

#include "pmscast/linalg.hpp"

namespace pmscast
{

// Streaming mean / variance (Welford) for real samples; mergeable so that
// per-chunk accumulators can be reduced in a fixed order.
struct RunningStats
{
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const RunningStats &o)
    {
        if (o.n == 0)
            return;
        if (n == 0)
        {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double d = o.mean - mean;
        mean += d * nb / (na + nb);
        m2 += o.m2 + d * d * na * nb / (na + nb);
        n += o.n;
    }

    double sample_variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_of_mean() const { return n > 1 ? std::sqrt(sample_variance() / static_cast<double>(n)) : 0.0; }
};

// Same as RunningStats for complex samples. `m2` accumulates |x - mean|^2.
struct ComplexRunningStats
{
    std::size_t n = 0;
    cplx mean{};
    double m2 = 0.0;

    void add(cplx x)
    {
        ++n;
        const cplx d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += std::real(std::conj(d) * (x - mean));
    }

    void merge(const ComplexRunningStats &o)
    {
        if (o.n == 0)
            return;
        if (n == 0)
        {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const cplx d = o.mean - mean;
        mean += d * (nb / (na + nb));
        m2 += o.m2 + std::norm(d) * na * nb / (na + nb);
        n += o.n;
    }

    // E|x|^2 - |E x|^2 with the 1/n normalisation.
    double population_variance() const { return n > 0 ? m2 / static_cast<double>(n) : 0.0; }
    double sample_variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_of_mean() const { return n > 1 ? std::sqrt(sample_variance() / static_cast<double>(n)) : 0.0; }
};

} // namespace pmscast

#endif
