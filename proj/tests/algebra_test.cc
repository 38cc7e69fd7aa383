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

#include "qpe/algebra.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

using namespace qpe;

namespace {

ComplexMatrix pauli(int d, int a, int b) {
    ComplexMatrix out = ComplexMatrix::identity(d);
    for (int i = 0; i < a; i++) {
        out = gate_x(d) * out;
    }
    for (int i = 0; i < b; i++) {
        out = out * gate_z(d);
    }
    return out;
}

// True if m equals some phase times X^a Z^b on `n` qudits.
bool is_pauli_up_to_phase(const ComplexMatrix &m, int d, size_t n) {
    size_t dim = ipow(d, n);
    size_t count = ipow(d * d, n);
    for (size_t code = 0; code < count; code++) {
        std::vector<ComplexMatrix> factors;
        size_t rem = code;
        for (size_t q = 0; q < n; q++) {
            int ab = static_cast<int>(rem % (d * d));
            rem /= d * d;
            factors.push_back(pauli(d, ab / d, ab % d));
        }
        ComplexMatrix p = tensor(factors);
        cplx overlap = trace_of_product(p.adjoint(), m) / static_cast<double>(dim);
        if (std::abs(std::abs(overlap) - 1.0) < 1e-10 && max_abs_diff(p * overlap, m) < 1e-10) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(algebra, ket_zero) {
    auto e = standard_element("ket", 3, 0);
    auto &psi = std::get<PureState>(e);
    ASSERT_EQ(psi.dim(), 3u);
    EXPECT_EQ(psi[0], cplx(1));
    EXPECT_EQ(psi[1], cplx(0));
    EXPECT_EQ(psi[2], cplx(0));
}

TEST(algebra, magic_state_amplitudes) {
    PureState psi = std::get<PureState>(standard_element("magic", 3));
    cplx xi = std::polar(1.0, 2 * M_PI / 9);
    double s = 1 / std::sqrt(3.0);
    EXPECT_LT(std::abs(psi[0] - s), 1e-15);
    EXPECT_LT(std::abs(psi[1] - xi * s), 1e-15);
    EXPECT_LT(std::abs(psi[2] - std::pow(xi, 8) * s), 1e-15);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(algebra, fourier_conjugates_z_to_x_up_to_phase) {
    for (int d : {3, 5, 7}) {
        ComplexMatrix f = gate_fourier(d);
        ComplexMatrix m = f.adjoint() * gate_z(d) * f;
        ComplexMatrix x = gate_x(d);
        // Find the phase from one nonzero entry.
        cplx phase = 0;
        for (size_t i = 0; i < x.data().size(); i++) {
            if (std::abs(x.data()[i]) > 0.5) {
                phase = m.data()[i];
                break;
            }
        }
        EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
        bool direct = max_abs_diff(m, x * phase) < 1e-12;
        bool inverse = max_abs_diff(m, x.adjoint() * phase) < 1e-12;
        EXPECT_TRUE(direct || inverse) << "d=" << d;
    }
}

TEST(algebra, catalog_gates_unitary) {
    for (int d : {3, 5, 7, 11}) {
        for (const char *name : {"I", "X", "Z", "F", "P", "SUM"}) {
            auto m = std::get<ComplexMatrix>(standard_element(name, d));
            ComplexMatrix prod = m.adjoint() * m;
            EXPECT_LT(max_abs_diff(prod, ComplexMatrix::identity(m.rows())), 1e-12) << name << " d=" << d;
        }
    }
    auto m9 = std::get<ComplexMatrix>(standard_element("M9", 3));
    EXPECT_LT(max_abs_diff(m9.adjoint() * m9, ComplexMatrix::identity(3)), 1e-12);
}

TEST(algebra, m9_is_diagonal_formula) {
    ComplexMatrix m = gate_m9();
    cplx xi = std::polar(1.0, 2 * M_PI / 9);
    EXPECT_LT(std::abs(m(0, 0) - 1.0), 1e-15);
    EXPECT_LT(std::abs(m(1, 1) - xi), 1e-15);
    EXPECT_LT(std::abs(m(2, 2) - std::pow(xi, 8)), 1e-14);
    EXPECT_EQ(m(0, 1), cplx(0));
}

TEST(algebra, sum_formula) {
    ComplexMatrix s = gate_sum(3);
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            EXPECT_EQ(s(a * 3 + (a + b) % 3, a * 3 + b), cplx(1));
        }
    }
}

TEST(algebra, cliffords_map_paulis_to_paulis) {
    for (int d : {3, 5}) {
        for (const auto &g : {gate_fourier(d), gate_phase(d)}) {
            for (const auto &p : {gate_x(d), gate_z(d)}) {
                EXPECT_TRUE(is_pauli_up_to_phase(g * p * g.adjoint(), d, 1));
            }
        }
        ComplexMatrix s = gate_sum(d);
        ComplexMatrix id = ComplexMatrix::identity(d);
        for (const auto &p : {tensor(gate_x(d), id), tensor(id, gate_x(d)), tensor(gate_z(d), id),
                              tensor(id, gate_z(d))}) {
            EXPECT_TRUE(is_pauli_up_to_phase(s * p * s.adjoint(), d, 2)) << "d=" << d;
        }
    }
}

TEST(algebra, m9_is_not_clifford) {
    ComplexMatrix m = gate_m9();
    EXPECT_FALSE(is_pauli_up_to_phase(m * gate_x(3) * m.adjoint(), 3, 1));
}

TEST(algebra, catalog_errors) {
    EXPECT_THROW(standard_element("nope", 3), std::invalid_argument);
    EXPECT_THROW(standard_element("X", 4), std::invalid_argument);
    EXPECT_THROW(standard_element("X", 9), std::invalid_argument);
    EXPECT_THROW(standard_element("M9", 5), std::invalid_argument);
    EXPECT_THROW(standard_element("magic", 5), std::invalid_argument);
    EXPECT_THROW(standard_element("ket", 3, 3), std::invalid_argument);
}

TEST(algebra, tensor_examples) {
    ComplexMatrix i3 = ComplexMatrix::identity(3);
    std::vector<ComplexMatrix> one{i3};
    EXPECT_EQ(tensor(one), i3);
    EXPECT_EQ(tensor(i3, i3), ComplexMatrix::identity(9));
    EXPECT_LT(std::abs(tensor(gate_x(3), gate_z(3)).trace()), 1e-12);
    std::vector<ComplexMatrix> none;
    EXPECT_THROW(tensor(none), std::invalid_argument);
}

TEST(algebra, tensor_associative) {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 10; trial++) {
        ComplexMatrix a = testutil::random_unitary(3, rng);
        ComplexMatrix b = testutil::random_hermitian(3, rng);
        ComplexMatrix c = testutil::random_unitary(3, rng);
        EXPECT_LT(max_abs_diff(tensor(a, tensor(b, c)), tensor(tensor(a, b), c)), 1e-12);
    }
}

TEST(algebra, apply_local_examples) {
    PureState zero = PureState::basis(9, 0);
    std::vector<size_t> s0{0};
    std::vector<size_t> s01{0, 1};
    std::vector<size_t> s1{1};

    PureState same = apply_local(ComplexMatrix::identity(3), s1, zero, 2);
    EXPECT_EQ(same, zero);

    PureState x0 = apply_local(gate_x(3), s0, zero, 2);
    EXPECT_LT(std::abs(x0[3] - 1.0), 1e-15);  // |10>

    PureState in = PureState::basis(9, 1 * 3 + 2);  // |12>
    PureState out = apply_local(gate_sum(3), s01, in, 2);
    EXPECT_LT(std::abs(out[1 * 3 + 0] - 1.0), 1e-15);  // |10>
}

TEST(algebra, apply_local_matches_dense_embedding) {
    testutil::Rng rng(5);
    ComplexMatrix u = testutil::random_unitary(9, rng);
    PureState psi = testutil::random_pure(27, rng);
    // Support (2, 0): conjugate by the permutation taking qudit order (2, 0, 1).
    std::vector<size_t> support{2, 0};
    PureState got = apply_local(u, support, psi, 3);
    ComplexMatrix full = tensor(u, ComplexMatrix::identity(3));
    // full acts on ordering (q2, q0, q1); map index.
    std::vector<cplx> expect(27, 0);
    for (int a = 0; a < 3; a++) {
        for (int b = 0; b < 3; b++) {
            for (int c = 0; c < 3; c++) {
                size_t in_perm = c * 9 + a * 3 + b;  // (q2, q0, q1)
                for (size_t out_perm = 0; out_perm < 27; out_perm++) {
                    int oc = static_cast<int>(out_perm / 9), oa = static_cast<int>(out_perm / 3 % 3),
                        ob = static_cast<int>(out_perm % 3);
                    expect[oa * 9 + ob * 3 + oc] += full(out_perm, in_perm) * psi[a * 9 + b * 3 + c];
                }
            }
        }
    }
    for (size_t i = 0; i < 27; i++) {
        EXPECT_LT(std::abs(got[i] - expect[i]), 1e-12);
    }
    EXPECT_NEAR(got.norm(), 1.0, 1e-10);
}

TEST(algebra, apply_local_errors) {
    PureState zero = PureState::basis(9, 0);
    std::vector<size_t> dup{0, 0};
    std::vector<size_t> s0{0};
    std::vector<size_t> bad{2};
    EXPECT_THROW(apply_local(gate_sum(3), dup, zero, 2), std::invalid_argument);
    EXPECT_THROW(apply_local(gate_sum(3), s0, zero, 2), std::invalid_argument);
    EXPECT_THROW(apply_local(gate_x(3), bad, zero, 2), std::invalid_argument);
}

TEST(algebra, pure_state_norm_check) {
    EXPECT_THROW(PureState({1.0, 1.0, 0.0}), std::invalid_argument);
    PureState ok({1.0, 1.0, 0.0}, true);
    EXPECT_NEAR(ok.norm(), 1.0, 1e-15);
    EXPECT_THROW(PureState({0.0, 0.0}, true), std::invalid_argument);
}

TEST(algebra, predicates) {
    EXPECT_TRUE(gate_fourier(5).is_unitary());
    EXPECT_FALSE(gate_fourier(5).is_hermitian());
    EXPECT_TRUE(magic_state().density_matrix().is_hermitian());
    ComplexMatrix twice = ComplexMatrix::identity(3) * cplx(2);
    EXPECT_FALSE(twice.is_unitary());
    EXPECT_TRUE(is_odd_prime(3));
    EXPECT_TRUE(is_odd_prime(13));
    EXPECT_FALSE(is_odd_prime(2));
    EXPECT_FALSE(is_odd_prime(9));
    EXPECT_FALSE(is_odd_prime(1));
}

TEST(algebra, eigen_range) {
    ComplexMatrix m(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0});  // Pauli Y
    auto [lo, hi] = hermitian_eigen_range(m);
    EXPECT_NEAR(lo, -1.0, 1e-12);
    EXPECT_NEAR(hi, 1.0, 1e-12);
}
