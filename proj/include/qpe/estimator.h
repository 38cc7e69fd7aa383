// Copyright 2026 The qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPE_ESTIMATOR_H
#define QPE_ESTIMATOR_H

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qpe/circuit_rep.h"
#include "qpe/rng.h"

namespace qpe {

struct SamplingPlan {
    double epsilon = 0;
    double delta = 0;
    double bound = 0;
    uint64_t samples = 0;
};

/// Hoeffding plan for an estimator bounded by [-bound, bound]:
/// samples = ceil(2 bound^2 ln(2/delta) / epsilon^2), at least 1.
SamplingPlan plan_samples(double epsilon, double delta, double bound);
/// Sample count for estimating the same probability from hardware shots:
/// ceil(ln(2/delta) / (2 epsilon^2)).
uint64_t plan_direct(double epsilon, double delta);

/// Phase points lambda_0 ... lambda_L, stored flat with one point index per
/// qudit.
struct Trajectory {
    size_t num_qudits = 0;
    std::vector<uint32_t> points;

    size_t length() const { return num_qudits == 0 ? 0 : points.size() / num_qudits; }
    std::span<const uint32_t> point(size_t step) const {
        return std::span<const uint32_t>(points).subspan(step * num_qudits, num_qudits);
    }
};

/// Markov-chain trajectory: lambda_0 from |W_rho| / M_rho per qudit, then
/// each gate resamples its support from its column-normalized |W_U| table.
Trajectory sample_trajectory(const CircuitRep &rep, CounterRng &rng);

/// Single-trajectory estimate
///   M_rho Sign[W_rho(l_0)] prod_l M_U(l_{l-1}) Sign[W_U(l_l | l_{l-1})] W(E | l_L).
/// Throws if the trajectory does not fit the representation or visits a
/// zero-weight transition.
double estimate_single(const CircuitRep &rep, const Trajectory &t);

/// Samples a trajectory and evaluates its estimate without storing it. Uses
/// the same random draws as sample_trajectory.
double sample_estimate(const CircuitRep &rep, CounterRng &rng, std::vector<uint32_t> &scratch);

enum class Direction { Forward, Reverse, Auto };
std::string_view direction_name(Direction d);
Direction parse_direction(std::string_view name);

struct EstimatorResult {
    double p_hat = 0;
    uint64_t samples_used = 0;
    SamplingPlan plan;
    /// Forward or Reverse; never Auto.
    Direction direction = Direction::Forward;
    double m_forward = 0;
    double m_reverse = 0;
    uint64_t seed = 0;
    double elapsed_ms = 0;
    double sum = 0;
    double sum_sq = 0;
};

/// Number of samples handled per work unit. Work units are reduced in index
/// order, so results do not depend on the worker count.
inline constexpr uint64_t kChunkSize = 4096;

/// Averages the single-trajectory estimate over plan.samples trajectories.
/// Sample i draws from CounterRng(seed, i). `Auto` picks the direction with
/// the smaller bound (forward on ties) and re-plans with that bound;
/// explicit directions use `plan` as given. `threads` = 0 uses the hardware
/// concurrency.
EstimatorResult run(const CircuitRep &rep, const SamplingPlan &plan, uint64_t seed, Direction direction,
                    unsigned threads = 0);

}  // namespace qpe

#endif
