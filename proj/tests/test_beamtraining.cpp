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

#include <cmath>
#include <numbers>
#include <set>

#include "pmscast/beamtraining.hpp"
#include "pmscast/stats.hpp"

using namespace pmscast;

namespace
{

constexpr double kBeta = 0.01;
constexpr double kPi = std::numbers::pi;

LargeScaleProfile unit_profile(int k_users)
{
    return {std::vector<double>(static_cast<std::size_t>(k_users), 1.0),
            std::vector<double>(static_cast<std::size_t>(k_users), 1.0)};
}

double noiseless_power(const Beam &beam, const ChannelRealization &real, int n_rf)
{
    Rng unused(0);
    const std::vector<double> powers(real.users(), 1.0);
    const int l = static_cast<int>(real.elements()) / n_rf;
    return receive_training(combiner_from_beam(beam, n_rf, l), real, powers, unused, NoiseMode::disabled).power;
}

} // namespace

TEST_CASE("codebook enumeration")
{
    const auto one = enumerate_codebook(1, 2, kBeta);
    REQUIRE(one.beams.size() == 2);
    CHECK(one.beams[0].phase_indices() == std::vector<int>{0});
    CHECK(one.beams[1].phase_indices() == std::vector<int>{1});

    const auto four = enumerate_codebook(4, 2, kBeta);
    CHECK(four.beams.size() == 16);
    std::set<std::vector<int>> distinct;
    for (const auto &b : four.beams)
        distinct.insert(b.phase_indices());
    CHECK(distinct.size() == 16);
    CHECK(four.beams[1].phase_indices() == std::vector<int>{0, 0, 0, 1});
    CHECK(four.beams[8].phase_indices() == std::vector<int>{1, 0, 0, 0});

    const auto quad = enumerate_codebook(3, 4, kBeta);
    CHECK(quad.beams.size() == 64);
    for (std::size_t i = 1; i < quad.beams.size(); ++i)
        CHECK(quad.beams[i - 1].phase_indices() < quad.beams[i].phase_indices());

    try
    {
        enumerate_codebook(64, 2, kBeta);
        FAIL("expected an error");
    }
    catch (const std::length_error &e)
    {
        CHECK(std::string(e.what()) == "codebook too large");
    }
    CHECK_THROWS_AS(enumerate_codebook(5, 2, kBeta, 31), std::length_error);
    CHECK_NOTHROW(enumerate_codebook(5, 2, kBeta, 32));
}

TEST_CASE("every beam has amplitude beta")
{
    for (const auto &b : enumerate_codebook(3, 4, kBeta).beams)
        for (const auto &c : b.coefficients())
            CHECK(std::abs(c) == doctest::Approx(kBeta).epsilon(1e-14));
}

TEST_CASE("combiner block structure")
{
    const auto beam = Beam::discrete({0, 1, 2, 3}, 4, 1.0);
    const auto &c = beam.coefficients();

    const auto single = combiner_from_beam(beam, 1, 4).dense();
    REQUIRE(single.rows() == 1);
    for (std::size_t j = 0; j < 4; ++j)
        CHECK(single(0, j) == c[j]);

    const auto two = combiner_from_beam(beam, 2, 2).dense();
    CHECK(two(0, 0) == c[0]);
    CHECK(two(0, 1) == c[1]);
    CHECK(two(0, 2) == cplx{});
    CHECK(two(0, 3) == cplx{});
    CHECK(two(1, 0) == cplx{});
    CHECK(two(1, 1) == cplx{});
    CHECK(two(1, 2) == c[2]);
    CHECK(two(1, 3) == c[3]);

    CHECK_THROWS_AS(combiner_from_beam(beam, 3, 2), std::invalid_argument);
}

TEST_CASE("combiner rows hold exactly L nonzeros")
{
    const auto beam = Beam::discrete(std::vector<int>(12, 1), 2, kBeta);
    const auto dense = combiner_from_beam(beam, 3, 4).dense();
    for (std::size_t r = 0; r < 3; ++r)
    {
        int nonzero = 0;
        for (std::size_t j = 0; j < 12; ++j)
            if (dense(r, j) != cplx{})
            {
                ++nonzero;
                CHECK(j / 4 == r);
            }
        CHECK(nonzero == 4);
    }
}

TEST_CASE("combiner applies per-block bilinear products")
{
    Rng rng(8);
    const auto real = sample_small_scale(rng, 8, 1);
    const auto beam = Beam::discrete({0, 1, 2, 3, 3, 2, 1, 0}, 4, kBeta);
    const auto r = combiner_from_beam(beam, 2, 4).apply(real.h.col(0));
    for (std::size_t n = 0; n < 2; ++n)
    {
        cplx expect{};
        for (std::size_t l = 0; l < 4; ++l)
            expect += beam.coefficients()[n * 4 + l] * real.h(n * 4 + l, 0);
        CHECK(std::abs(r[n] - expect) < 1e-15);
    }
}

TEST_CASE("beam correlation")
{
    const auto a = Beam::discrete({0, 1, 1, 0}, 2, kBeta);
    CHECK(beam_correlation(a, a) == doctest::Approx(4 * kBeta * kBeta));
    const auto p = Beam::discrete({0, 0}, 2, kBeta);
    const auto q = Beam::discrete({0, 1}, 2, kBeta);
    CHECK(std::abs(beam_correlation(p, q)) < 1e-18);
    const auto book = enumerate_codebook(2, 4, kBeta);
    for (const auto &x : book.beams)
        for (const auto &y : book.beams)
            CHECK(beam_correlation(x, y) == doctest::Approx(beam_correlation(y, x)).epsilon(1e-12));
}

TEST_CASE("noiseless training power of an aligned beam")
{
    const int n = 8;
    const double alpha = 1e-6, eps_r = 50.0;
    const LargeScaleProfile profile{{alpha}, {100.0}};
    const auto real = draw_channel(17, n, profile);
    const Beam beam = ideal_beam(real, kBeta);
    const double p = training_power(alpha, n, eps_r);
    Rng rng(0);
    const std::vector<double> powers{p};
    const auto obs = receive_training(combiner_from_beam(beam, 1, n), real, powers, rng, NoiseMode::disabled);

    double sum_abs = 0.0;
    for (std::size_t l = 0; l < static_cast<std::size_t>(n); ++l)
        sum_abs += std::abs(real.h(l, 0));
    const double expect = eps_r / n * kBeta * kBeta * sum_abs * sum_abs;
    CHECK(obs.power == doctest::Approx(expect).epsilon(1e-12));
    CHECK(obs.power == squared_norm(obs.r));

    const std::vector<double> powers4{4.0 * p};
    const auto obs4 = receive_training(combiner_from_beam(beam, 1, n), real, powers4, rng, NoiseMode::disabled);
    CHECK(obs4.power == doctest::Approx(4.0 * obs.power).epsilon(1e-12));
}

TEST_CASE("noise-only training power has mean N_RF")
{
    const int n_rf = 3, l = 2;
    ChannelRealization zero{ComplexMatrix(6, 1), ComplexMatrix(6, 1), 0};
    const auto comb = combiner_from_beam(Beam::discrete(std::vector<int>(6, 0), 2, kBeta), n_rf, l);
    Rng rng(31);
    const std::vector<double> powers{1.0};
    RunningStats s;
    for (int t = 0; t < 100000; ++t)
        s.add(receive_training(comb, zero, powers, rng).power);
    CHECK(s.mean == doctest::Approx(n_rf).epsilon(0.02));
}

TEST_CASE("bisection base cases")
{
    auto book = enumerate_codebook(1, 2, kBeta);
    int calls = 0;
    const MeasureFn count = [&](const Beam &b) {
        ++calls;
        return b.phase_indices()[0] == 1 ? 2.0 : 1.0;
    };
    const auto two = train_bisection(book, count);
    CHECK(two.measurements == 2);
    CHECK(calls == 2);
    CHECK(two.stages == 1);
    CHECK(two.index == 1);

    Codebook single{{book.beams[0]}, 1, 2};
    calls = 0;
    const auto one = train_bisection(single, count);
    CHECK(one.measurements == 0);
    CHECK(calls == 0);
    CHECK(one.index == 0);
}

// Straight-line rendition of the pairwise bisection over an explicit list of
// phase-index vectors, used as a trace oracle.
std::vector<std::vector<std::size_t>> reference_trace(const std::vector<std::vector<int>> &beams, int m_ph,
                                                      const std::vector<double> &powers)
{
    auto corr = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t n = 0; n < beams[a].size(); ++n)
            s += std::cos(2.0 * kPi * (beams[b][n] - beams[a][n]) / m_ph);
        return s;
    };
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < beams.size(); ++i)
        set.push_back(i);
    std::vector<std::vector<std::size_t>> trace;
    while (set.size() > 1)
    {
        trace.push_back(set);
        std::size_t a = set[0], b = set[1];
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (corr(set[i], set[j]) < corr(a, b) - 1e-12)
                {
                    a = set[i];
                    b = set[j];
                }
        const std::size_t w = powers[a] >= powers[b] ? a : b;
        const std::size_t lo = w == a ? b : a;
        std::vector<std::size_t> next;
        for (std::size_t c : set)
            if (corr(c, w) > corr(c, lo) + 1e-12 || c == w)
                next.push_back(c);
        set = next;
    }
    trace.push_back(set);
    return trace;
}

TEST_CASE("bisection trace matches the straight-line oracle")
{
    const std::vector<std::vector<int>> indices{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const auto book = enumerate_codebook(2, 2, kBeta);
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
    {
        const auto real = draw_channel(seed, 2, unit_profile(2));
        std::vector<double> powers;
        for (const auto &b : book.beams)
            powers.push_back(noiseless_power(b, real, 1));
        const MeasureFn measure = [&](const Beam &b) { return noiseless_power(b, real, 1); };
        const auto result = train_bisection(book, measure);
        const auto expect = reference_trace(indices, 2, powers);
        CHECK(result.candidate_sets == expect);
        CHECK(result.index == expect.back().front());
    }
}

TEST_CASE("bisection trace oracle on a four-level codebook")
{
    const auto book = enumerate_codebook(3, 4, kBeta);
    std::vector<std::vector<int>> indices;
    for (const auto &b : book.beams)
        indices.push_back(b.phase_indices());
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const auto real = draw_channel(seed, 3, unit_profile(3));
        std::vector<double> powers;
        for (const auto &b : book.beams)
            powers.push_back(noiseless_power(b, real, 1));
        const MeasureFn measure = [&](const Beam &b) { return noiseless_power(b, real, 1); };
        CHECK(train_bisection(book, measure).candidate_sets == reference_trace(indices, 4, powers));
    }
}

TEST_CASE("exhaustive search")
{
    const auto book = enumerate_codebook(4, 4, 1.0);
    Codebook single{{book.beams[5]}, 4, 4};
    const MeasureFn flat = [](const Beam &) { return 1.0; };
    CHECK(train_exhaustive(single, flat).beam == book.beams[5]);
    const auto tied = train_exhaustive(book, flat);
    CHECK(tied.index == 0);
    CHECK(tied.measurements == book.beams.size());
}

TEST_CASE("exhaustive search recovers a planted beam")
{
    // h_l = conj(c_l) makes c the unique maximiser up to a global grid phase;
    // planting beams with a leading zero index removes that ambiguity.
    for (int m_ph : {2, 4})
    {
        const auto book = enumerate_codebook(4, m_ph, kBeta);
        Rng rng(static_cast<std::uint64_t>(m_ph));
        for (int trial = 0; trial < 20; ++trial)
        {
            std::vector<int> idx{0};
            for (int n = 1; n < 4; ++n)
                idx.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(m_ph))));
            const Beam planted = Beam::discrete(idx, m_ph, kBeta);
            ChannelRealization real{ComplexMatrix(4, 1), ComplexMatrix(4, 1), 0};
            for (std::size_t n = 0; n < 4; ++n)
                real.h(n, 0) = std::conj(planted.coefficients()[n]) / kBeta * (1.0 + 0.1 * static_cast<double>(n));
            real.g = real.h;
            const MeasureFn measure = [&](const Beam &b) { return noiseless_power(b, real, 1); };
            CHECK(train_exhaustive(book, measure).beam == planted);
        }
    }
}

TEST_CASE("ideal beam aligns the multicast sum")
{
    const auto real = draw_channel(23, 16, unit_profile(1));
    const Beam beam = ideal_beam(real, kBeta);
    CHECK_FALSE(beam.is_discrete());
    for (const auto &c : beam.coefficients())
        CHECK(std::abs(c) == doctest::Approx(kBeta).epsilon(1e-14));
    const cplx combined = combiner_from_beam(beam, 1, 16).apply(real.h.col(0))[0];
    double sum_abs = 0.0;
    for (std::size_t l = 0; l < 16; ++l)
        sum_abs += std::abs(real.h(l, 0));
    CHECK(combined.real() == doctest::Approx(kBeta * sum_abs).epsilon(1e-12));
    CHECK(std::abs(combined.imag()) < 1e-15);
}

TEST_CASE("ideal beam on a zero channel defaults to phase zero")
{
    ChannelRealization zero{ComplexMatrix(3, 2), ComplexMatrix(3, 2), 0};
    const Beam beam = ideal_beam(zero, kBeta);
    for (double p : beam.phases())
        CHECK(p == 0.0);
}

TEST_CASE("ideal beam per-element mean for a single user")
{
    // E{c h} = beta E|h| = beta sqrt(pi)/2.
    const auto real = draw_channel(29, 1000000, unit_profile(1));
    const Beam beam = ideal_beam(real, kBeta);
    RunningStats s;
    for (std::size_t n = 0; n < real.elements(); ++n)
        s.add((beam.coefficients()[n] * real.h(n, 0)).real());
    CHECK(s.mean == doctest::Approx(kBeta * std::sqrt(kPi) / 2.0).epsilon(0.01));
}

TEST_CASE("quantisation")
{
    const auto on_grid = Beam::continuous({0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0}, kBeta);
    CHECK(quantize_beam(on_grid, 4).phase_indices() == std::vector<int>{0, 1, 2, 3});

    Rng rng(41);
    std::vector<double> phases;
    for (int i = 0; i < 2000; ++i)
        phases.push_back(2.0 * kPi * rng.uniform());
    const auto cont = Beam::continuous(phases, kBeta);
    for (int m : {2, 3, 4, 8, 64, 1024})
    {
        const auto q = quantize_beam(cont, m);
        CHECK(quantize_beam(q, m) == q);
        double worst = 0.0;
        for (std::size_t i = 0; i < phases.size(); ++i)
        {
            double err = std::remainder(cont.phases()[i] - q.phases()[i], 2.0 * kPi);
            CHECK(err > -kPi / m - 1e-12);
            CHECK(err <= kPi / m + 1e-12);
            worst = std::max(worst, std::abs(err));
            CHECK(std::abs(q.coefficients()[i]) == doctest::Approx(kBeta).epsilon(1e-14));
        }
        CHECK(worst <= kPi / m + 1e-12);
    }

    // Half-way phases round down so the error is +pi/M.
    const auto half = Beam::continuous({kPi / 2.0}, kBeta);
    CHECK(quantize_beam(half, 2).phase_indices() == std::vector<int>{0});
}

TEST_CASE("quantisation sinc factor")
{
    // E{e^{j dtheta}} = (M/pi) sin(pi/M) = 2/pi for M = 2.
    Rng rng(43);
    std::vector<double> phases(1000000);
    for (auto &p : phases)
        p = 2.0 * kPi * rng.uniform();
    const auto cont = Beam::continuous(phases, 1.0);
    const auto q = quantize_beam(cont, 2);
    ComplexRunningStats s;
    for (std::size_t i = 0; i < phases.size(); ++i)
        s.add(std::polar(1.0, cont.phases()[i] - q.phases()[i]));
    CHECK(s.mean.real() == doctest::Approx(2.0 / kPi).epsilon(0.01));
    CHECK(std::abs(s.mean.imag()) < 0.005);
}

TEST_CASE("normalised channel strength ordering")
{
    const int n = 64;
    std::vector<ChannelRealization> ensemble;
    for (std::uint64_t s = 0; s < 400; ++s)
        ensemble.push_back(draw_channel(1000 + s, n, unit_profile(1)));
    std::vector<Beam> ideals, quantized, randoms;
    const auto book_rng_seed = 77;
    Rng rng(book_rng_seed);
    for (const auto &r : ensemble)
    {
        ideals.push_back(ideal_beam(r, kBeta));
        quantized.push_back(quantize_beam(ideals.back(), 2));
        std::vector<int> idx(n);
        for (auto &x : idx)
            x = static_cast<int>(rng.below(2));
        randoms.push_back(Beam::discrete(idx, 2, kBeta));
    }
    CHECK(necs(ideals, ideals, ensemble, 1) == 1.0);
    const double random_ratio = necs(randoms, ideals, ensemble, 1);
    const double quant_ratio = necs(quantized, ideals, ensemble, 1);
    CHECK(random_ratio < 0.1);
    CHECK(quant_ratio > random_ratio);
    CHECK(quant_ratio < 1.0);
    CHECK(necs(ideals[0], ideals[0], ensemble, 1) == 1.0);
}

TEST_CASE("exhaustive dominates bisection which beats random on average")
{
    for (int m_ph : {2, 4})
    {
        const auto book = enumerate_codebook(4, m_ph, kBeta);
        const BisectionTrainer trainer(book);
        Rng pick(5);
        RunningStats diff;
        for (std::uint64_t seed = 0; seed < 1000; ++seed)
        {
            const auto real = draw_channel(seed, 4, unit_profile(4));
            const MeasureFn measure = [&](const Beam &b) { return noiseless_power(b, real, 1); };
            const double ex = measure(train_exhaustive(book, measure).beam);
            const auto bis = trainer.run(measure);
            const double bi = measure(bis.beam);
            CHECK(ex >= bi);
            CHECK(bis.stages >= 1);
            diff.add(bi - measure(random_beam(book, pick)));
        }
        // One-sided 95% bound on the mean gain.
        CHECK(diff.mean - 1.645 * diff.stderr_of_mean() > 0.0);
    }
}

TEST_CASE("alternative bisection options terminate within the codebook")
{
    const auto book = enumerate_codebook(4, 4, kBeta);
    const auto real = draw_channel(3, 4, unit_profile(4));
    const MeasureFn measure = [&](const Beam &b) { return noiseless_power(b, real, 1); };
    for (auto metric : {PairMetric::real_part, PairMetric::magnitude})
        for (auto rule : {ShrinkRule::strict_filter, ShrinkRule::halve})
            for (bool keep : {false, true})
            {
                const auto r = train_bisection(book, measure, {metric, rule, keep});
                CHECK(r.index < book.beams.size());
                CHECK(r.beam == book.beams[r.index]);
                for (std::size_t s = 1; s < r.candidate_sets.size(); ++s)
                    CHECK(r.candidate_sets[s].size() < r.candidate_sets[s - 1].size());
            }
}

TEST_CASE("beam serialisation round trip")
{
    const auto b = Beam::discrete({3, 0, 2, 1}, 4, 0.0125);
    const auto line = serialize_beam(b);
    CHECK(line.rfind("3,0,2,1,", 0) == 0);
    CHECK(parse_beam(line, 4) == b);
    CHECK_THROWS_AS(parse_beam("1,x,0.1", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_beam("5,0.1", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_beam("0.1", 4), std::invalid_argument);
}
