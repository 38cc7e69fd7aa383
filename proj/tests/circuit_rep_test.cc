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

#include <gtest/gtest.h>

#include <cmath>

#include "qpe/oracle.h"
#include "test_util.h"

using namespace qpe;

namespace {

Circuit single_magic() {
    Circuit c = testutil::basis_circuit(1);
    c.inputs[0].kind = StateSpec::Kind::Magic;
    return c;
}

double max_abs_magic() {
    double m = 0;
    for (int q = 0; q < 3; q++) {
        for (int p = 0; p < 3; p++) {
            m = std::max(m, std::abs(testutil::wigner_closed_form(magic_state(), q, p)));
        }
    }
    return m;
}

}  // namespace

TEST(sampling_table, from_columns) {
    // Column 0: weights (0.5, -0.25, 0.25); column 1: single entry.
    std::vector<double> w{0.5, 0.0, -0.25, 2.0, 0.25, 0.0};
    SamplingTable t = SamplingTable::from_columns(w, 3, 2);
    ASSERT_EQ(t.column_size(0), 3u);
    ASSERT_EQ(t.column_size(1), 1u);
    EXPECT_EQ(t.cumulative[t.col_begin[0] + 2], 1.0);
    EXPECT_EQ(t.cumulative[t.col_begin[1]], 1.0);
    EXPECT_NEAR(t.probability(t.col_begin[0]), 0.5, 1e-15);
    EXPECT_NEAR(t.probability(t.col_begin[0] + 1), 0.25, 1e-15);
    EXPECT_EQ(t.factor[t.col_begin[0]], 1.0);
    EXPECT_EQ(t.factor[t.col_begin[0] + 1], -1.0);
    EXPECT_EQ(t.factor[t.col_begin[1]], 2.0);
    EXPECT_EQ(t.rows[t.pick(0, 0.0)], 0u);
    EXPECT_EQ(t.rows[t.pick(0, 0.49)], 0u);
    EXPECT_EQ(t.rows[t.pick(0, 0.5)], 1u);
    EXPECT_EQ(t.rows[t.pick(0, 0.8)], 2u);
    EXPECT_EQ(t.rows[t.pick(0, 0.9999999999)], 2u);
    EXPECT_EQ(t.rows[t.pick(1, 0.3)], 1u);

    std::vector<double> zero_col{1.0, 0.0, 0.0, 0.0};
    EXPECT_THROW(SamplingTable::from_columns(zero_col, 2, 2), std::invalid_argument);
}

TEST(circuit_rep, identity_circuit) {
    CircuitRep rep = represent(testutil::basis_circuit(1));
    EXPECT_EQ(rep.m_forward, 1.0);
    EXPECT_EQ(rep.m_reverse, 1.0);
    EXPECT_EQ(rep.m_state, 1.0);
    EXPECT_NEAR(rep.m_effect, 3.0, 1e-14);
}

TEST(circuit_rep, sampling_tables_stochastic) {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 20; trial++) {
        CircuitRep rep = represent(testutil::random_mixed_circuit(rng));
        auto check = [](const SamplingTable &t) {
            for (size_t c = 0; c < t.columns; c++) {
                double total = 0;
                for (size_t e = t.col_begin[c]; e < t.col_begin[c + 1]; e++) {
                    total += t.probability(e);
                    EXPECT_GT(t.probability(e), 0.0);
                }
                EXPECT_NEAR(total, 1.0, 1e-12);
                EXPECT_EQ(t.cumulative[t.col_begin[c + 1] - 1], 1.0);
            }
        };
        for (const auto &t : rep.initial_tables) {
            check(t);
        }
        for (const auto &t : rep.gate_tables) {
            check(t);
        }
        ASSERT_EQ(rep.gate_tables.size(), rep.num_gates());
        for (size_t l = 0; l < rep.num_gates(); l++) {
            const auto &t = rep.gate_tables[l];
            const auto &g = rep.gates[l];
            for (size_t c = 0; c < t.columns; c++) {
                for (size_t e = t.col_begin[c]; e < t.col_begin[c + 1]; e++) {
                    EXPECT_NEAR(std::abs(t.factor[e]), g.point_negativity[c], 1e-12);
                    EXPECT_EQ(std::signbit(t.factor[e]), std::signbit(g(t.rows[e], c)));
                }
            }
        }
    }
}

TEST(circuit_rep, single_magic_bounds) {
    CircuitRep rep = represent(single_magic());
    double m9 = testutil::magic_negativity_direct();
    EXPECT_NEAR(rep.m_state, m9, 1e-13);
    EXPECT_NEAR(rep.m_forward, m9, 1e-13);
    EXPECT_NEAR(rep.m_reverse, rep.m_effect * max_abs_magic(), 1e-13);
    EXPECT_NEAR(rep.m_reverse, 3 * max_abs_magic(), 1e-13);
}

TEST(circuit_rep, fig1_family_power_law) {
    double m9 = testutil::magic_negativity_direct();
    for (size_t k = 0; k <= 4; k++) {
        Circuit c = random_clifford_circuit(5, 40, k, 100 + k);
        CircuitRep rep = represent(c);
        EXPECT_NEAR(rep.m_forward / std::pow(m9, k), 1.0, 1e-12) << "k=" << k;
        EXPECT_NEAR(forward_bound(rep), rep.m_forward, 1e-15);
    }
}

TEST(circuit_rep, m9_gate_multiplies_bound) {
    Circuit c = random_clifford_circuit(3, 10, 1, 5);
    CircuitRep before = represent(c);
    c.gates.insert(c.gates.begin() + 4, GateSpec{"M9", {1}, {}});
    CircuitRep after = represent(c);
    size_t count = 0;
    double m_m9 = 0;
    for (const auto &g : after.gates) {
        if (g.max_negativity > 1 + 1e-9) {
            count++;
            m_m9 = g.max_negativity;
        }
    }
    EXPECT_EQ(count, 1u);
    EXPECT_NEAR(after.m_forward, before.m_forward * m_m9, 1e-12);
}

TEST(circuit_rep, all_stabilizer_fully_measured) {
    testutil::Rng rng(32);
    for (int trial = 0; trial < 10; trial++) {
        Circuit c = random_clifford_circuit(3, 20, 0, trial);
        for (auto &e : c.effects) {
            e = EffectSpec{EffectSpec::Kind::Ket, static_cast<int>(rng() % 3), {}};
        }
        CircuitRep rep = represent(c);
        EXPECT_EQ(rep.m_forward, 1.0);
        EXPECT_NEAR(rep.m_reverse, 1.0, 1e-12);
        EXPECT_NEAR(reverse_bound(rep), 1.0, 1e-12);
    }
}

TEST(circuit_rep, identity_effects_scale_reverse_bound) {
    // Unmeasured qudits carry W(I|lambda) = 1 at all d^2 points and M_I = d^2,
    // while max|W_rho| = 1/d per stabilizer qudit; each contributes d.
    Circuit c = random_clifford_circuit(3, 10, 0, 4);
    CircuitRep rep = represent(c);
    EXPECT_NEAR(rep.m_reverse, 9.0, 1e-12);
    EXPECT_EQ(rep.m_forward, 1.0);
}

TEST(circuit_rep, ratio_formula) {
    testutil::Rng rng(33);
    for (int trial = 0; trial < 50; trial++) {
        CircuitRep rep = represent(testutil::random_mixed_circuit(rng));
        if (rep.m_forward == 0) {
            continue;
        }
        double lhs = reverse_bound(rep) / forward_bound(rep);
        EXPECT_NEAR(lhs, bound_ratio_formula(rep), 1e-12 * std::max(1.0, lhs));
        EXPECT_NEAR(rep.m_reverse, reverse_bound(rep), 1e-12 * rep.m_reverse);
    }
}

TEST(circuit_rep, bounds_from_factors) {
    testutil::Rng rng(34);
    for (int trial = 0; trial < 20; trial++) {
        CircuitRep rep = represent(testutil::random_mixed_circuit(rng));
        double fwd = negativity_state(rep.state) * rep.effect.max_abs();
        double rev = negativity_effect(rep.effect) * max_abs_state(rep.state);
        for (size_t l = 0; l < rep.num_gates(); l++) {
            fwd *= rep.gates[l].max_negativity;
            rev *= rep.adjoint_gates[l].max_negativity;
        }
        EXPECT_NEAR(rep.m_forward, fwd, 1e-12 * std::max(1.0, fwd));
        EXPECT_NEAR(rep.m_reverse, rev, 1e-12 * std::max(1.0, rev));
        EXPECT_GE(rep.m_state, 1 - 1e-12);
        EXPECT_GE(rep.m_forward, rep.effect.max_abs() - 1e-12);
    }
}

TEST(circuit_rep, reverse_rep_structure) {
    testutil::Rng rng(35);
    for (int trial = 0; trial < 20; trial++) {
        Circuit c = testutil::random_mixed_circuit(rng);
        CircuitRep rep = represent(c);
        CircuitRep rev = reverse_rep(rep);
        EXPECT_TRUE(rev.reversed);
        EXPECT_EQ(rev.num_gates(), rep.num_gates());
        EXPECT_NEAR(rev.m_forward, rep.m_reverse, 1e-12 * std::max(1.0, rep.m_reverse));
        // Reversing twice restores the forward quasidistributions.
        CircuitRep back = reverse_rep(rev);
        EXPECT_FALSE(back.reversed);
        for (size_t q = 0; q < rep.num_qudits; q++) {
            for (size_t l = 0; l < 9; l++) {
                EXPECT_NEAR(back.state.per_qudit[q][l], rep.state.per_qudit[q][l], 1e-13);
                EXPECT_NEAR(back.effect.per_qudit[q][l], rep.effect.per_qudit[q][l], 1e-13);
            }
        }
        for (size_t l = 0; l < rep.num_gates(); l++) {
            EXPECT_EQ(rev.gates[l].support, rep.gates[rep.num_gates() - 1 - l].support);
            for (size_t i = 0; i < rep.gates[l].matrix.size(); i++) {
                EXPECT_NEAR(back.gates[l].matrix[i], rep.gates[l].matrix[i], 1e-12);
            }
        }
    }
}

TEST(circuit_rep, reverse_identity_circuit) {
    CircuitRep rev = reverse_rep(represent(testutil::basis_circuit(1)));
    EXPECT_NEAR(trajectory_sum(rev), 1.0, 1e-14);
    EXPECT_NEAR(markov_moments(rev).mean, 1.0, 1e-14);
}

TEST(circuit_rep, reverse_zero_effect_rejected) {
    Circuit c = testutil::basis_circuit(1);
    c.effects[0] = EffectSpec{EffectSpec::Kind::Matrix, 0, ComplexMatrix::zeros(3, 3)};
    CircuitRep rep = represent(c);
    EXPECT_EQ(rep.m_effect, 0.0);
    EXPECT_EQ(rep.m_forward, 0.0);
    EXPECT_THROW(reverse_rep(rep), std::invalid_argument);
}

TEST(circuit_rep, frame_dimension_mismatch) {
    Circuit c = testutil::basis_circuit(1);
    EXPECT_THROW(represent(c, wigner_frame(5)), std::invalid_argument);
    c.dim = 5;
    EXPECT_NO_THROW(represent(c, wigner_frame(5)));
}

TEST(circuit_rep, non_unitary_explicit_gate) {
    Circuit c = testutil::basis_circuit(1);
    c.gates.push_back({"U", {0}, ComplexMatrix::identity(3) * cplx(1.01)});
    EXPECT_THROW(represent(c), std::invalid_argument);
}

TEST(circuit_rep, clifford_composition_same_law) {
    // Composing two Cliffords: the composed table equals the product of the
    // separate tables, and so does its absolute value.
    testutil::Rng rng(36);
    FramePtr frame = wigner_frame(3);
    for (int trial = 0; trial < 20; trial++) {
        std::vector<size_t> s{0, 1};
        ComplexMatrix a = testutil::random_clifford(2, rng);
        ComplexMatrix b = testutil::random_clifford(2, rng);
        GateQuasi ga = rep_unitary(*frame, a, s);
        GateQuasi gb = rep_unitary(*frame, b, s);
        GateQuasi gab = rep_unitary(*frame, b * a, s);
        size_t n = ga.points;
        for (size_t o = 0; o < n; o++) {
            for (size_t i = 0; i < n; i++) {
                double prod = 0;
                for (size_t k = 0; k < n; k++) {
                    prod += std::abs(gb(o, k)) * std::abs(ga(k, i));
                }
                EXPECT_NEAR(std::abs(gab(o, i)), prod, 1e-10);
            }
        }
    }
}
