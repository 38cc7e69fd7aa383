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

#include "qpe/circuit_rep.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpe {

SamplingTable SamplingTable::from_columns(std::span<const double> weights, size_t rows, size_t columns) {
    if (weights.size() != rows * columns) {
        throw std::invalid_argument("sampling table weight count mismatch");
    }
    SamplingTable t;
    t.columns = columns;
    t.col_begin.reserve(columns + 1);
    t.col_begin.push_back(0);
    for (size_t c = 0; c < columns; c++) {
        double norm1 = 0;
        for (size_t r = 0; r < rows; r++) {
            norm1 += std::abs(weights[r * columns + c]);
        }
        if (norm1 == 0) {
            throw std::invalid_argument("sampling table column " + std::to_string(c) + " is entirely zero");
        }
        double running = 0;
        for (size_t r = 0; r < rows; r++) {
            double w = weights[r * columns + c];
            if (w == 0) {
                continue;
            }
            running += std::abs(w);
            t.rows.push_back(static_cast<uint32_t>(r));
            t.cumulative.push_back(running / norm1);
            t.factor.push_back(w > 0 ? norm1 : -norm1);
        }
        t.cumulative.back() = 1.0;
        t.col_begin.push_back(static_cast<uint32_t>(t.rows.size()));
    }
    return t;
}

size_t SamplingTable::pick(size_t col, double u) const {
    uint32_t b = col_begin[col];
    uint32_t e = col_begin[col + 1];
    if (e - b == 1) {
        return b;
    }
    auto it = std::upper_bound(cumulative.begin() + b, cumulative.begin() + e, u);
    if (it == cumulative.begin() + e) {
        --it;
    }
    return static_cast<size_t>(it - cumulative.begin());
}

double SamplingTable::probability(size_t entry) const {
    // Entry positions are global, so the column start is found by search.
    auto it = std::upper_bound(col_begin.begin(), col_begin.end(), static_cast<uint32_t>(entry));
    size_t start = *(it - 1);
    return entry == start ? cumulative[entry] : cumulative[entry] - cumulative[entry - 1];
}

namespace {

double product_of_max(const std::vector<GateQuasi> &gates) {
    double p = 1;
    for (const auto &g : gates) {
        p *= g.max_negativity;
    }
    return p;
}

CircuitRep assemble(FramePtr frame, std::vector<ComplexMatrix> state_ops, std::vector<ComplexMatrix> effect_ops,
                    StateQuasi state, EffectQuasi effect, std::vector<GateQuasi> gates,
                    std::vector<GateQuasi> adjoint_gates, std::vector<std::string> labels, bool reversed) {
    CircuitRep rep;
    rep.frame = std::move(frame);
    rep.num_qudits = state.num_qudits();
    rep.reversed = reversed;
    rep.state = std::move(state);
    rep.effect = std::move(effect);
    rep.gates = std::move(gates);
    rep.adjoint_gates = std::move(adjoint_gates);
    rep.gate_labels = std::move(labels);
    rep.state_ops = std::move(state_ops);
    rep.effect_ops = std::move(effect_ops);

    rep.m_state = negativity_state(rep.state);
    rep.m_effect = negativity_effect(rep.effect);
    rep.max_state = max_abs_state(rep.state);
    rep.max_effect = rep.effect.max_abs();
    rep.m_forward = forward_bound(rep);
    rep.m_reverse = reverse_bound(rep);

    for (const auto &w : rep.state.per_qudit) {
        rep.initial_tables.push_back(SamplingTable::from_columns(w, w.size(), 1));
    }
    for (const auto &g : rep.gates) {
        rep.gate_tables.push_back(SamplingTable::from_columns(g.matrix, g.points, g.points));
    }
    return rep;
}

}  // namespace

CircuitRep represent(const Circuit &circuit, FramePtr frame) {
    validate_circuit(circuit);
    if (!frame || frame->dim() != circuit.dim) {
        throw std::invalid_argument("frame dimension does not match the circuit dimension");
    }
    int d = circuit.dim;
    std::vector<ComplexMatrix> state_ops, effect_ops;
    for (const auto &s : circuit.inputs) {
        state_ops.push_back(input_state(s, d).density_matrix());
    }
    for (const auto &e : circuit.effects) {
        effect_ops.push_back(effect_matrix(e, d));
    }
    std::vector<GateQuasi> gates, adjoint;
    std::vector<std::string> labels;
    for (const auto &g : circuit.gates) {
        ComplexMatrix u = gate_matrix(g, d);
        gates.push_back(rep_unitary(*frame, u, g.support));
        adjoint.push_back(rep_unitary(*frame, u.adjoint(), g.support));
        labels.push_back(g.name);
    }
    StateQuasi state = rep_state(*frame, state_ops);
    EffectQuasi effect = rep_effect(*frame, effect_ops);
    return assemble(std::move(frame), std::move(state_ops), std::move(effect_ops), std::move(state),
                    std::move(effect), std::move(gates), std::move(adjoint), std::move(labels), false);
}

CircuitRep represent(const Circuit &circuit) {
    return represent(circuit, wigner_frame(circuit.dim));
}

double forward_bound(const CircuitRep &rep) {
    return rep.m_state * product_of_max(rep.gates) * rep.max_effect;
}

double reverse_bound(const CircuitRep &rep) {
    return rep.m_effect * product_of_max(rep.adjoint_gates) * rep.max_state;
}

double bound_ratio_formula(const CircuitRep &rep) {
    double ratio = (rep.m_effect / rep.m_state) * (rep.max_state / rep.max_effect);
    for (size_t l = 0; l < rep.gates.size(); l++) {
        ratio *= rep.adjoint_gates[l].max_negativity / rep.gates[l].max_negativity;
    }
    return ratio;
}

CircuitRep reverse_rep(const CircuitRep &rep) {
    if (rep.m_effect == 0) {
        throw std::invalid_argument("the reverse direction is undefined for a zero effect");
    }
    const Frame &frame = *rep.frame;
    std::vector<ComplexMatrix> state_ops = rep.effect_ops;
    std::vector<ComplexMatrix> effect_ops = rep.state_ops;
    StateQuasi state = quasi_from_f(frame, state_ops);
    EffectQuasi effect = quasi_from_g(frame, effect_ops);
    std::vector<GateQuasi> gates(rep.adjoint_gates.rbegin(), rep.adjoint_gates.rend());
    std::vector<GateQuasi> adjoint(rep.gates.rbegin(), rep.gates.rend());
    std::vector<std::string> labels(rep.gate_labels.rbegin(), rep.gate_labels.rend());
    return assemble(rep.frame, std::move(state_ops), std::move(effect_ops), std::move(state), std::move(effect),
                    std::move(gates), std::move(adjoint), std::move(labels), !rep.reversed);
}

}  // namespace qpe
