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

#ifndef PMSCAST_BEAMTRAINING_HPP
#define PMSCAST_BEAMTRAINING_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pmscast/channel.hpp"
#include "pmscast/linalg.hpp"
#include "pmscast/rng.hpp"

namespace pmscast
{

// Phase-shift vector with a common amplitude. A discrete beam stores phase
// indices on an M-point grid; a continuous beam stores raw phases and reports
// m_ph() == 0.
class Beam
{
public:
    Beam() = default;

    static Beam discrete(std::vector<int> phase_indices, int m_ph, double amplitude);
    static Beam continuous(std::vector<double> phases, double amplitude);

    bool is_discrete() const { return m_ph_ > 0; }
    int m_ph() const { return m_ph_; }
    double amplitude() const { return amplitude_; }
    std::size_t size() const { return coefficients_.size(); }

    /// Throws std::logic_error for continuous beams.
    const std::vector<int> &phase_indices() const;
    const std::vector<double> &phases() const { return phases_; }
    const CVector &coefficients() const { return coefficients_; }

    bool operator==(const Beam &o) const
    {
        return m_ph_ == o.m_ph_ && amplitude_ == o.amplitude_ && indices_ == o.indices_ && phases_ == o.phases_;
    }

private:
    int m_ph_ = 0;
    double amplitude_ = 0.0;
    std::vector<int> indices_;
    std::vector<double> phases_;
    CVector coefficients_;
};

struct Codebook
{
    std::vector<Beam> beams;
    int n_elements = 0;
    int m_ph = 0;
};

inline constexpr std::uint64_t kDefaultCodebookCap = std::uint64_t{1} << 20;

/// All M^N beams in lexicographic index order, first element most significant.
/// Throws std::length_error("codebook too large") when M^N exceeds `cap`.
Codebook enumerate_codebook(int n_elements, int m_ph, double amplitude,
                            std::uint64_t cap = kDefaultCodebookCap);

// Block-diagonal N_RF x N combining matrix built from a beam: row n carries the
// coefficients of sub-surface n.
class Combiner
{
public:
    Combiner(CVector coefficients, int n_rf, int l_per_sub);

    int n_rf() const { return n_rf_; }
    int l_per_sub() const { return l_per_sub_; }

    /// C h without conjugation; `h` has N entries, the result N_RF.
    CVector apply(std::span<const cplx> h) const;
    void apply(std::span<const cplx> h, std::span<cplx> out) const;
    ComplexMatrix dense() const;

private:
    CVector coefficients_;
    int n_rf_;
    int l_per_sub_;
};

/// Throws std::invalid_argument on a length mismatch.
Combiner combiner_from_beam(const Beam &beam, int n_rf, int l_per_sub);

/// Re(b1^H b2).
double beam_correlation(const Beam &b1, const Beam &b2);

struct TrainingObservation
{
    CVector r;
    double power = 0.0;
};

/// r = sum_k sqrt(p_k) C g_k + n with a unit pilot symbol and n ~ CN(0, I).
TrainingObservation receive_training(const Combiner &combiner, const ChannelRealization &realization,
                                     std::span<const double> powers, Rng &rng,
                                     NoiseMode noise = NoiseMode::enabled);

// Maps a candidate beam to its measured received power.
using MeasureFn = std::function<double(const Beam &)>;

/// Measurement closure over one realization: every call draws fresh noise from
/// `rng` (ignored when noise is disabled). `rng` must outlive the closure.
MeasureFn make_power_measure(const ChannelRealization &realization, int n_rf, std::vector<double> powers,
                             Rng &rng, NoiseMode noise = NoiseMode::enabled);

enum class PairMetric
{
    real_part,   // Re(b1^H b2)
    magnitude,   // |b1^H b2|
};

enum class ShrinkRule
{
    strict_filter,  // keep beams strictly closer to the winner than to the loser
    halve,          // keep the better-scoring half
};

struct BisectionOptions
{
    PairMetric metric = PairMetric::real_part;
    ShrinkRule rule = ShrinkRule::strict_filter;
    bool keep_best_measured = false;  // return the best beam measured on the way
};

struct TrainingResult
{
    Beam beam;
    std::size_t index = 0;  // position in the codebook
    int stages = 0;
    std::size_t measurements = 0;
    std::vector<std::vector<std::size_t>> candidate_sets;  // set entering each stage, then the final one
};

// Runs the pairwise bisection search. The pair correlation table is computed
// once per trainer (for codebooks up to 4096 beams) and shared by every run.
class BisectionTrainer
{
public:
    explicit BisectionTrainer(const Codebook &codebook, BisectionOptions options = {});

    TrainingResult run(const MeasureFn &measure) const;

private:
    double corr(std::size_t a, std::size_t b) const;

    const Codebook &codebook_;
    BisectionOptions options_;
    std::vector<double> table_;
};

/// Bisection without a reusable trainer.
TrainingResult train_bisection(const Codebook &codebook, const MeasureFn &measure,
                               const BisectionOptions &options = {});

/// Measures every beam; ties go to the lowest index.
TrainingResult train_exhaustive(const Codebook &codebook, const MeasureFn &measure);

const Beam &random_beam(const Codebook &codebook, Rng &rng);

/// Aligning continuous beam: per element, beta * conj(h_sum) / |h_sum| with
/// h_sum the sum of the users' small-scale channels. Phase 0 where h_sum = 0.
Beam ideal_beam(const ChannelRealization &realization, double amplitude);

/// Rounds each phase to the nearest grid point 2 pi m / M; the phase error lies
/// in (-pi/M, pi/M].
Beam quantize_beam(const Beam &beam, int m_ph);

/// sum_k ||C h_k||^2 over the users' small-scale channels.
double channel_strength(const Beam &beam, int n_rf, const ChannelRealization &realization);

/// E||C H||^2 / E||C_ideal H||^2 with one beam pair per realization.
double necs(std::span<const Beam> beams, std::span<const Beam> ideals,
            std::span<const ChannelRealization> ensemble, int n_rf);

/// Fixed beams evaluated over the whole ensemble.
double necs(const Beam &beam, const Beam &ideal, std::span<const ChannelRealization> ensemble, int n_rf);

/// "i_1,...,i_N,beta" for discrete beams.
std::string serialize_beam(const Beam &beam);
Beam parse_beam(const std::string &line, int m_ph);

} // namespace pmscast

#endif
