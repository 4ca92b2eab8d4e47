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

#include "pmscast/beamtraining.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pmscast
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kTableLimit = 4096;

double wrap_phase(double theta)
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0)
        t += kTwoPi;
    return t;
}

} // namespace

Beam Beam::discrete(std::vector<int> phase_indices, int m_ph, double amplitude)
{
    if (m_ph < 2)
        throw std::invalid_argument("beam phase resolution must be at least 2");
    Beam b;
    b.m_ph_ = m_ph;
    b.amplitude_ = amplitude;
    b.phases_.reserve(phase_indices.size());
    b.coefficients_.reserve(phase_indices.size());
    for (int idx : phase_indices)
    {
        if (idx < 0 || idx >= m_ph)
            throw std::invalid_argument("phase index out of range");
        const double theta = kTwoPi * idx / m_ph;
        b.phases_.push_back(theta);
        b.coefficients_.push_back(std::polar(amplitude, theta));
    }
    b.indices_ = std::move(phase_indices);
    return b;
}

Beam Beam::continuous(std::vector<double> phases, double amplitude)
{
    Beam b;
    b.amplitude_ = amplitude;
    b.coefficients_.reserve(phases.size());
    for (auto &theta : phases)
    {
        theta = wrap_phase(theta);
        b.coefficients_.push_back(std::polar(amplitude, theta));
    }
    b.phases_ = std::move(phases);
    return b;
}

const std::vector<int> &Beam::phase_indices() const
{
    if (!is_discrete())
        throw std::logic_error("continuous beam has no phase indices");
    return indices_;
}

Codebook enumerate_codebook(int n_elements, int m_ph, double amplitude, std::uint64_t cap)
{
    if (n_elements < 1 || m_ph < 2)
        throw std::invalid_argument("enumerate_codebook: need N >= 1 and M >= 2");
    std::uint64_t size = 1;
    for (int n = 0; n < n_elements; ++n)
    {
        if (size > cap / static_cast<std::uint64_t>(m_ph) + 1)
            throw std::length_error("codebook too large");
        size *= static_cast<std::uint64_t>(m_ph);
    }
    if (size > cap)
        throw std::length_error("codebook too large");

    Codebook book{{}, n_elements, m_ph};
    book.beams.reserve(static_cast<std::size_t>(size));
    std::vector<int> idx(static_cast<std::size_t>(n_elements), 0);
    for (std::uint64_t c = 0; c < size; ++c)
    {
        book.beams.push_back(Beam::discrete(idx, m_ph, amplitude));
        for (int pos = n_elements - 1; pos >= 0; --pos)
        {
            auto &digit = idx[static_cast<std::size_t>(pos)];
            if (++digit < m_ph)
                break;
            digit = 0;
        }
    }
    return book;
}

Combiner::Combiner(CVector coefficients, int n_rf, int l_per_sub)
    : coefficients_(std::move(coefficients)), n_rf_(n_rf), l_per_sub_(l_per_sub)
{
    if (n_rf < 1 || l_per_sub < 1 ||
        coefficients_.size() != static_cast<std::size_t>(n_rf) * static_cast<std::size_t>(l_per_sub))
        throw std::invalid_argument("beam length does not match n_rf * l_per_sub");
}

void Combiner::apply(std::span<const cplx> h, std::span<cplx> out) const
{
    const auto l = static_cast<std::size_t>(l_per_sub_);
    for (std::size_t n = 0; n < static_cast<std::size_t>(n_rf_); ++n)
    {
        cplx s{};
        for (std::size_t j = n * l; j < (n + 1) * l; ++j)
            s += coefficients_[j] * h[j];
        out[n] = s;
    }
}

CVector Combiner::apply(std::span<const cplx> h) const
{
    if (h.size() != coefficients_.size())
        throw std::invalid_argument("channel length does not match combiner");
    CVector out(static_cast<std::size_t>(n_rf_));
    apply(h, out);
    return out;
}

ComplexMatrix Combiner::dense() const
{
    ComplexMatrix m(static_cast<std::size_t>(n_rf_), coefficients_.size());
    const auto l = static_cast<std::size_t>(l_per_sub_);
    for (std::size_t j = 0; j < coefficients_.size(); ++j)
        m(j / l, j) = coefficients_[j];
    return m;
}

Combiner combiner_from_beam(const Beam &beam, int n_rf, int l_per_sub)
{
    return Combiner(beam.coefficients(), n_rf, l_per_sub);
}

double beam_correlation(const Beam &b1, const Beam &b2)
{
    if (b1.size() != b2.size())
        throw std::invalid_argument("beam_correlation: length mismatch");
    return dot_h(b1.coefficients(), b2.coefficients()).real();
}

TrainingObservation receive_training(const Combiner &combiner, const ChannelRealization &realization,
                                     std::span<const double> powers, Rng &rng, NoiseMode noise)
{
    if (powers.size() != realization.users())
        throw std::invalid_argument("receive_training: one power per user required");
    const auto n_rf = static_cast<std::size_t>(combiner.n_rf());
    TrainingObservation obs{CVector(n_rf), 0.0};
    CVector tmp(n_rf);
    for (std::size_t k = 0; k < powers.size(); ++k)
    {
        combiner.apply(realization.g.col(k), tmp);
        const double amp = std::sqrt(powers[k]);
        for (std::size_t n = 0; n < n_rf; ++n)
            obs.r[n] += amp * tmp[n];
    }
    if (noise == NoiseMode::enabled)
        for (auto &x : obs.r)
            x += rng.complex_normal();
    obs.power = squared_norm(obs.r);
    return obs;
}

MeasureFn make_power_measure(const ChannelRealization &realization, int n_rf, std::vector<double> powers,
                             Rng &rng, NoiseMode noise)
{
    const int l = static_cast<int>(realization.elements()) / n_rf;
    return [&realization, &rng, n_rf, l, noise, p = std::move(powers)](const Beam &beam) {
        return receive_training(combiner_from_beam(beam, n_rf, l), realization, p, rng, noise).power;
    };
}

BisectionTrainer::BisectionTrainer(const Codebook &codebook, BisectionOptions options)
    : codebook_(codebook), options_(options)
{
    const std::size_t m = codebook.beams.size();
    if (m == 0)
        throw std::invalid_argument("codebook is empty");
    if (m <= kTableLimit)
    {
        table_.resize(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a; b < m; ++b)
            {
                const cplx c = dot_h(codebook.beams[a].coefficients(), codebook.beams[b].coefficients());
                const double v = options_.metric == PairMetric::real_part ? c.real() : std::abs(c);
                table_[a * m + b] = v;
                table_[b * m + a] = v;
            }
    }
}

double BisectionTrainer::corr(std::size_t a, std::size_t b) const
{
    const std::size_t m = codebook_.beams.size();
    if (!table_.empty())
        return table_[a * m + b];
    const cplx c = dot_h(codebook_.beams[a].coefficients(), codebook_.beams[b].coefficients());
    return options_.metric == PairMetric::real_part ? c.real() : std::abs(c);
}

TrainingResult BisectionTrainer::run(const MeasureFn &measure) const
{
    std::vector<std::size_t> set(codebook_.beams.size());
    std::iota(set.begin(), set.end(), std::size_t{0});

    // Correlations are sums of unit phasors times beta^2; differences below
    // this are rounding noise and count as ties.
    const double amp = codebook_.beams.front().amplitude();
    const double tol = 1e-9 * amp * amp * static_cast<double>(codebook_.beams.front().size());

    TrainingResult result;
    std::size_t best_index = 0;
    double best_power = -std::numeric_limits<double>::infinity();

    while (set.size() > 1)
    {
        result.candidate_sets.push_back(set);
        ++result.stages;

        // Least-correlated pair; the first one found wins ties.
        std::size_t pa = 0, pb = 1;
        double lowest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
            {
                const double c = corr(set[i], set[j]);
                if (c < lowest - tol)
                {
                    lowest = c;
                    pa = i;
                    pb = j;
                }
            }

        const std::size_t a = set[pa], b = set[pb];
        const double power_a = measure(codebook_.beams[a]);
        const double power_b = measure(codebook_.beams[b]);
        result.measurements += 2;
        const bool a_wins = power_a >= power_b;
        const std::size_t winner = a_wins ? a : b;
        const std::size_t loser = a_wins ? b : a;
        const double winner_power = a_wins ? power_a : power_b;
        if (winner_power > best_power)
        {
            best_power = winner_power;
            best_index = winner;
        }

        // Keep the ceil(|C|/2) beams ranked by `score`, winner first.
        auto keep_top_half = [&](auto score) {
            std::vector<std::size_t> ranked;
            ranked.reserve(set.size());
            ranked.push_back(winner);
            for (std::size_t c : set)
                if (c != winner)
                    ranked.push_back(c);
            std::stable_sort(ranked.begin() + 1, ranked.end(),
                             [&](std::size_t x, std::size_t y) { return score(x) > score(y) + tol; });
            ranked.resize((set.size() + 1) / 2);
            std::sort(ranked.begin(), ranked.end());
            return ranked;
        };

        std::vector<std::size_t> next;
        if (options_.rule == ShrinkRule::strict_filter)
        {
            for (std::size_t c : set)
                if (corr(c, winner) > corr(c, loser) + tol)
                    next.push_back(c);
            if (next.empty() || next.size() == set.size())
                next = keep_top_half([&](std::size_t c) { return corr(c, winner); });
            else if (std::find(next.begin(), next.end(), winner) == next.end())
                next.insert(std::upper_bound(next.begin(), next.end(), winner), winner);
        }
        else
        {
            next = keep_top_half([&](std::size_t c) { return corr(c, winner) - corr(c, loser); });
        }
        set = std::move(next);
    }

    result.candidate_sets.push_back(set);
    result.index = set.front();
    if (options_.keep_best_measured && result.measurements > 0)
    {
        const double final_power = measure(codebook_.beams[result.index]);
        ++result.measurements;
        if (best_power > final_power)
            result.index = best_index;
    }
    result.beam = codebook_.beams[result.index];
    return result;
}

TrainingResult train_bisection(const Codebook &codebook, const MeasureFn &measure, const BisectionOptions &options)
{
    return BisectionTrainer(codebook, options).run(measure);
}

TrainingResult train_exhaustive(const Codebook &codebook, const MeasureFn &measure)
{
    if (codebook.beams.empty())
        throw std::invalid_argument("codebook is empty");
    TrainingResult result;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < codebook.beams.size(); ++i)
    {
        const double p = measure(codebook.beams[i]);
        if (p > best)
        {
            best = p;
            result.index = i;
        }
    }
    result.measurements = codebook.beams.size();
    result.stages = 1;
    result.beam = codebook.beams[result.index];
    return result;
}

const Beam &random_beam(const Codebook &codebook, Rng &rng)
{
    if (codebook.beams.empty())
        throw std::invalid_argument("codebook is empty");
    return codebook.beams[static_cast<std::size_t>(rng.below(codebook.beams.size()))];
}

Beam ideal_beam(const ChannelRealization &realization, double amplitude)
{
    std::vector<double> phases(realization.elements(), 0.0);
    for (std::size_t n = 0; n < realization.elements(); ++n)
    {
        cplx sum{};
        for (std::size_t k = 0; k < realization.users(); ++k)
            sum += realization.h(n, k);
        if (sum != cplx{})
            phases[n] = -std::arg(sum);
    }
    return Beam::continuous(std::move(phases), amplitude);
}

Beam quantize_beam(const Beam &beam, int m_ph)
{
    if (m_ph < 2)
        throw std::invalid_argument("m_ph must be at least 2");
    if (beam.is_discrete() && beam.m_ph() == m_ph)
        return beam;
    std::vector<int> idx;
    idx.reserve(beam.size());
    for (double theta : beam.phases())
    {
        const double x = wrap_phase(theta) * m_ph / kTwoPi;
        auto m = static_cast<long long>(std::ceil(x - 0.5));
        m %= m_ph;
        if (m < 0)
            m += m_ph;
        idx.push_back(static_cast<int>(m));
    }
    return Beam::discrete(std::move(idx), m_ph, beam.amplitude());
}

double channel_strength(const Beam &beam, int n_rf, const ChannelRealization &realization)
{
    const int l = static_cast<int>(realization.elements()) / n_rf;
    const Combiner comb = combiner_from_beam(beam, n_rf, l);
    CVector tmp(static_cast<std::size_t>(n_rf));
    double total = 0.0;
    for (std::size_t k = 0; k < realization.users(); ++k)
    {
        comb.apply(realization.h.col(k), tmp);
        total += squared_norm(tmp);
    }
    return total;
}

double necs(std::span<const Beam> beams, std::span<const Beam> ideals,
            std::span<const ChannelRealization> ensemble, int n_rf)
{
    if (ensemble.empty() || beams.size() != ensemble.size() || ideals.size() != ensemble.size())
        throw std::invalid_argument("necs: one beam and one reference per realization required");
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < ensemble.size(); ++t)
    {
        num += channel_strength(beams[t], n_rf, ensemble[t]);
        den += channel_strength(ideals[t], n_rf, ensemble[t]);
    }
    return num / den;
}

double necs(const Beam &beam, const Beam &ideal, std::span<const ChannelRealization> ensemble, int n_rf)
{
    if (ensemble.empty())
        throw std::invalid_argument("necs: empty ensemble");
    double num = 0.0, den = 0.0;
    for (const auto &r : ensemble)
    {
        num += channel_strength(beam, n_rf, r);
        den += channel_strength(ideal, n_rf, r);
    }
    return num / den;
}

std::string serialize_beam(const Beam &beam)
{
    std::string out;
    for (int idx : beam.phase_indices())
        out += std::to_string(idx) + ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", beam.amplitude());
    return out + buf;
}

Beam parse_beam(const std::string &line, int m_ph)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        fields.push_back(item);
    if (fields.size() < 2)
        throw std::invalid_argument("beam line needs at least one index and an amplitude");
    std::vector<int> idx;
    try
    {
        for (std::size_t i = 0; i + 1 < fields.size(); ++i)
        {
            std::size_t used = 0;
            idx.push_back(std::stoi(fields[i], &used));
            if (used != fields[i].size())
                throw std::invalid_argument(fields[i]);
        }
        std::size_t used = 0;
        const double amplitude = std::stod(fields.back(), &used);
        if (used != fields.back().size())
            throw std::invalid_argument(fields.back());
        return Beam::discrete(std::move(idx), m_ph, amplitude);
    }
    catch (const std::logic_error &)
    {
        throw std::invalid_argument("malformed beam line: " + line);
    }
}

} // namespace pmscast
