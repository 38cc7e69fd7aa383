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

#ifndef QPE_CIRCUIT_REP_H
#define QPE_CIRCUIT_REP_H

#include <string>
#include <vector>

#include "qpe/circuit.h"
#include "qpe/quasi.h"

namespace qpe {

/// Inverse-transform sampling table over the columns of a nonnegative
/// kernel. Column c owns entries [col_begin[c], col_begin[c+1]); only
/// nonzero weights are stored. `cumulative` rises strictly within a column
/// and ends at exactly 1. `factor` is the estimator multiplier attached to
/// the transition: the column's 1-norm times the sign of the signed weight.
struct SamplingTable {
    size_t columns = 0;
    std::vector<uint32_t> col_begin;
    std::vector<uint32_t> rows;
    std::vector<double> cumulative;
    std::vector<double> factor;

    /// Builds from a signed weight array with entry (row, col) at
    /// weights[row * columns + col]. Throws if a column is entirely zero.
    static SamplingTable from_columns(std::span<const double> weights, size_t rows, size_t columns);

    /// Picks the first entry of column `col` whose cumulative weight exceeds u.
    size_t pick(size_t col, double u) const;
    double probability(size_t entry) const;
    size_t column_size(size_t col) const { return col_begin[col + 1] - col_begin[col]; }
};

/// Quasiprobability representation of a whole circuit, plus the tables
/// the trajectory sampler walks.
struct CircuitRep {
    FramePtr frame;
    size_t num_qudits = 0;
    /// True for the time-reversed representation from `reverse_rep`.
    bool reversed = false;

    StateQuasi state;
    std::vector<GateQuasi> gates;
    /// Representations of U_l^dagger, same order as `gates`.
    std::vector<GateQuasi> adjoint_gates;
    EffectQuasi effect;
    std::vector<std::string> gate_labels;

    double m_state = 0;
    double m_effect = 0;
    double max_state = 0;
    double max_effect = 0;
    double m_forward = 0;
    double m_reverse = 0;

    /// One single-column table per qudit for the initial point.
    std::vector<SamplingTable> initial_tables;
    std::vector<SamplingTable> gate_tables;

    /// Operators the representation was built from, kept so the reverse
    /// representation can exchange their roles.
    std::vector<ComplexMatrix> state_ops;
    std::vector<ComplexMatrix> effect_ops;

    size_t num_gates() const { return gates.size(); }
    size_t points_per_qudit() const { return frame->size(); }
};

CircuitRep represent(const Circuit &circuit, FramePtr frame);
/// Uses the Wigner frame of the circuit's dimension.
CircuitRep represent(const Circuit &circuit);

/// M_state * prod M_U * max |W(E | lambda)|.
double forward_bound(const CircuitRep &rep);
/// M_effect * prod M_{U^dagger} * max |W_rho(lambda)|.
double reverse_bound(const CircuitRep &rep);
/// Right-hand side of the reverse/forward ratio identity, assembled from
/// the individual factors rather than from the two bounds.
double bound_ratio_formula(const CircuitRep &rep);

/// Time-reversed representation: initial weights Tr[F(lambda) E_n], gates
/// U_l^dagger in reverse order, terminal weights Tr[rho_n G(lambda)]. Its
/// forward estimator targets the same Born probability. Throws for a zero
/// effect.
CircuitRep reverse_rep(const CircuitRep &rep);

}  // namespace qpe

#endif
