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

#ifndef QPE_QUASI_H
#define QPE_QUASI_H

#include <span>
#include <vector>

#include "qpe/frame.h"

namespace qpe {

/// Throws if a gate table over `qudits` qudits would exceed this many
/// entries (81 x 81 at d = 3 fits comfortably; 2401 x 2401 at d = 7 is the
/// largest two-qudit table accepted).
inline constexpr size_t kMaxGateTableEntries = size_t{2401} * 2401;

/// Real quasidistribution of a product state, one vector per qudit:
/// W(lambda) = Tr[F(lambda) rho_n].
struct StateQuasi {
    std::vector<std::vector<double>> per_qudit;

    size_t num_qudits() const { return per_qudit.size(); }
    /// Product over qudits of the per-qudit values at a full phase point.
    double value(std::span<const uint32_t> point) const;
};

/// Transition quasidistribution of a local unitary. Entry (out, in) is
/// W_U(out | in); stored row-major so a column is a fixed input point. Local
/// point indices follow the support order, support[0] most significant.
struct GateQuasi {
    std::vector<size_t> support;
    size_t points = 0;
    std::vector<double> matrix;
    std::vector<double> point_negativity;
    double max_negativity = 0;

    double operator()(size_t out, size_t in) const { return matrix[out * points + in]; }
};

/// Effect quasidistribution, one vector per qudit: W(E_n | lambda) = Tr[E_n G(lambda)].
struct EffectQuasi {
    std::vector<std::vector<double>> per_qudit;
    std::vector<double> max_abs_per_qudit;

    size_t num_qudits() const { return per_qudit.size(); }
    double value(std::span<const uint32_t> point) const;
    /// max over full phase points of |W(E | lambda)|.
    double max_abs() const;
};

/// Validates each density matrix (Hermitian, unit trace, PSD within 1e-10).
StateQuasi rep_state(const Frame &frame, std::span<const ComplexMatrix> states);
/// Validates each effect (Hermitian, spectrum in [0, 1] within 1e-10).
EffectQuasi rep_effect(const Frame &frame, std::span<const ComplexMatrix> effects);
/// Requires a unitary (within 1e-8) acting on at most two qudits.
GateQuasi rep_unitary(const Frame &frame, const ComplexMatrix &u, std::span<const size_t> support);

/// Unvalidated builders used by the reverse protocol, where the roles of
/// states and effects are exchanged.
StateQuasi quasi_from_f(const Frame &frame, std::span<const ComplexMatrix> ops);
EffectQuasi quasi_from_g(const Frame &frame, std::span<const ComplexMatrix> ops);

double l1_norm(std::span<const double> v);
double max_abs(std::span<const double> v);

/// Product over qudits of the per-qudit 1-norms.
double negativity_state(const StateQuasi &w);
double negativity_effect(const EffectQuasi &w);
/// Product over qudits of the per-qudit max |W|.
double max_abs_state(const StateQuasi &w);

}  // namespace qpe

#endif
