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

#ifndef QPE_ORACLE_H
#define QPE_ORACLE_H

#include <stdexcept>
#include <utility>
#include <vector>

#include "qpe/circuit_rep.h"
#include "qpe/estimator.h"

namespace qpe {

// Exact reference computations. Sums over trajectories are evaluated by
// propagating a vector over the full N-qudit phase space through the gate
// tables, one gate at a time; trajectories are never enumerated.

/// Largest Hilbert-space dimension for the dense statevector oracle (3^10).
inline constexpr size_t kMaxDenseDim = 59049;
/// Largest full phase-space size for contractions (9^8, i.e. 8 qutrits).
inline constexpr size_t kMaxPhaseSpace = 43046721;
/// Largest number of stored suffix-vector entries for the optimal sampler.
inline constexpr size_t kMaxSuffixEntries = size_t{1} << 25;

class CapExceeded : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Tr(E U rho U^dagger) by dense statevector evolution.
double born_exact(const Circuit &circuit);

/// sum over all trajectories of W(trajectory).
double trajectory_sum(const CircuitRep &rep);
/// M_c = sum over all trajectories of |W(trajectory)|.
double circuit_negativity(const CircuitRep &rep);

/// Exact first and second moments of the Markov-chain single-trajectory
/// estimate, computed from the sampling tables.
struct MarkovMoments {
    double mean = 0;
    double second_moment = 0;
};
MarkovMoments markov_moments(const CircuitRep &rep);

/// Draws trajectories exactly from |W(trajectory)| / M_c using stored
/// suffix sums, and returns the estimate M_c Sign[W(trajectory)].
class OptimalSampler {
   public:
    explicit OptimalSampler(const CircuitRep &rep);

    double m_c() const { return m_c_; }
    std::pair<Trajectory, double> sample(CounterRng &rng) const;

   private:
    const CircuitRep *rep_;
    size_t total_;
    std::vector<size_t> strides_;
    std::vector<std::vector<double>> suffix_;
    std::vector<double> initial_weight_;
    double m_c_ = 0;
};

std::pair<Trajectory, double> optimal_sample(const CircuitRep &rep, CounterRng &rng);

struct VarianceReport {
    double born = 0;
    double m_c = 0;
    double v_min = 0;
    double v_markov = 0;
    double mean_markov = 0;
};

/// `born` is the exact trajectory sum; v_min = M_c^2 - born^2.
VarianceReport variance_report(const CircuitRep &rep);

}  // namespace qpe

#endif
