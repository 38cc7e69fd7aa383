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

#include "qpe/quasi.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qpe {

double StateQuasi::value(std::span<const uint32_t> point) const {
    double v = 1;
    for (size_t n = 0; n < per_qudit.size(); n++) {
        v *= per_qudit[n][point[n]];
    }
    return v;
}

double EffectQuasi::value(std::span<const uint32_t> point) const {
    double v = 1;
    for (size_t n = 0; n < per_qudit.size(); n++) {
        v *= per_qudit[n][point[n]];
    }
    return v;
}

double EffectQuasi::max_abs() const {
    double v = 1;
    for (double m : max_abs_per_qudit) {
        v *= m;
    }
    return v;
}

double l1_norm(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        s += std::abs(x);
    }
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

namespace {

void check_square(const Frame &frame, const ComplexMatrix &m, const char *what) {
    if (m.rows() != static_cast<size_t>(frame.dim()) || !m.is_square()) {
        throw std::invalid_argument(std::string(what) + " must be a " + std::to_string(frame.dim()) + " x " +
                                    std::to_string(frame.dim()) + " matrix");
    }
}

std::vector<double> clipped(std::vector<double> v) {
    for (auto &x : v) {
        x = clip_small(x);
    }
    return v;
}

// Frame operators of the k-qudit product frame, in local point order.
std::vector<SparseOp> product_ops(const Frame &frame, size_t k, bool use_f) {
    std::vector<SparseOp> ops;
    for (size_t i = 0; i < frame.size(); i++) {
        ops.push_back(use_f ? frame.f_sparse(i) : frame.g_sparse(i));
    }
    size_t d = frame.dim();
    for (size_t level = 1; level < k; level++) {
        std::vector<SparseOp> next;
        next.reserve(ops.size() * frame.size());
        for (const auto &a : ops) {
            for (size_t i = 0; i < frame.size(); i++) {
                next.push_back(sparse_tensor(a, use_f ? frame.f_sparse(i) : frame.g_sparse(i), d));
            }
        }
        ops = std::move(next);
    }
    return ops;
}

}  // namespace

StateQuasi quasi_from_f(const Frame &frame, std::span<const ComplexMatrix> ops) {
    StateQuasi out;
    for (const auto &op : ops) {
        check_square(frame, op, "state operator");
        out.per_qudit.push_back(clipped(frame.quasi_f(op)));
    }
    return out;
}

EffectQuasi quasi_from_g(const Frame &frame, std::span<const ComplexMatrix> ops) {
    EffectQuasi out;
    for (const auto &op : ops) {
        check_square(frame, op, "effect operator");
        out.per_qudit.push_back(clipped(frame.quasi_g(op)));
        out.max_abs_per_qudit.push_back(max_abs(out.per_qudit.back()));
    }
    return out;
}

StateQuasi rep_state(const Frame &frame, std::span<const ComplexMatrix> states) {
    for (size_t n = 0; n < states.size(); n++) {
        const auto &rho = states[n];
        check_square(frame, rho, "density matrix");
        if (!rho.is_hermitian(1e-10)) {
            throw std::invalid_argument("density matrix of qudit " + std::to_string(n) + " is not Hermitian");
        }
        if (std::abs(rho.trace() - cplx{1.0}) > 1e-10) {
            throw std::invalid_argument("density matrix of qudit " + std::to_string(n) + " is not normalized");
        }
        if (hermitian_eigen_range(rho).first < -1e-10) {
            throw std::invalid_argument("density matrix of qudit " + std::to_string(n) +
                                        " is not positive semidefinite");
        }
    }
    return quasi_from_f(frame, states);
}

EffectQuasi rep_effect(const Frame &frame, std::span<const ComplexMatrix> effects) {
    for (size_t n = 0; n < effects.size(); n++) {
        const auto &e = effects[n];
        check_square(frame, e, "effect");
        if (!e.is_hermitian(1e-10)) {
            throw std::invalid_argument("effect of qudit " + std::to_string(n) + " is not Hermitian");
        }
        auto [lo, hi] = hermitian_eigen_range(e);
        if (lo < -1e-10 || hi > 1 + 1e-10) {
            throw std::invalid_argument("effect of qudit " + std::to_string(n) + " has eigenvalues outside [0, 1]");
        }
    }
    return quasi_from_g(frame, effects);
}

GateQuasi rep_unitary(const Frame &frame, const ComplexMatrix &u, std::span<const size_t> support) {
    size_t k = support.size();
    if (k == 0 || k > 2) {
        throw std::invalid_argument("gates must act on one or two qudits");
    }
    if (k == 2 && support[0] == support[1]) {
        throw std::invalid_argument("repeated support index");
    }
    size_t dim = ipow(frame.dim(), k);
    if (!u.is_square() || u.rows() != dim) {
        throw std::invalid_argument("gate matrix dimension does not match its support");
    }
    if (!u.is_unitary(1e-8)) {
        throw std::invalid_argument("gate matrix is not unitary");
    }
    size_t points = ipow(frame.size(), k);
    if (points * points > kMaxGateTableEntries) {
        throw std::invalid_argument("gate transition table of " + std::to_string(points) + " x " +
                                    std::to_string(points) + " entries exceeds the supported size");
    }

    std::vector<SparseOp> f_ops = product_ops(frame, k, true);
    std::vector<SparseOp> g_ops = product_ops(frame, k, false);
    ComplexMatrix u_dag = u.adjoint();

    GateQuasi out;
    out.support.assign(support.begin(), support.end());
    out.points = points;
    out.matrix.assign(points * points, 0.0);
    out.point_negativity.assign(points, 0.0);

    ComplexMatrix ug(dim, dim);
    for (size_t in = 0; in < points; in++) {
        // B = U G(in) U^dagger.
        std::fill(ug.data().begin(), ug.data().end(), cplx{});
        for (const auto &e : g_ops[in]) {
            for (size_t i = 0; i < dim; i++) {
                ug(i, e.col) += u(i, e.row) * e.value;
            }
        }
        ComplexMatrix b = ug * u_dag;
        for (size_t o = 0; o < points; o++) {
            double w = clip_small(sparse_trace(f_ops[o], b).real());
            // Permutation entries of Clifford tables come out as 1 - 2^-52 and alike.
            if (std::abs(std::abs(w) - 1.0) < kClipThreshold) {
                w = w > 0 ? 1.0 : -1.0;
            }
            out.matrix[o * points + in] = w;
            out.point_negativity[in] += std::abs(w);
        }
    }
    out.max_negativity = *std::max_element(out.point_negativity.begin(), out.point_negativity.end());
    return out;
}

double negativity_state(const StateQuasi &w) {
    double m = 1;
    for (const auto &v : w.per_qudit) {
        m *= l1_norm(v);
    }
    return m;
}

double negativity_effect(const EffectQuasi &w) {
    double m = 1;
    for (const auto &v : w.per_qudit) {
        m *= l1_norm(v);
    }
    return m;
}

double max_abs_state(const StateQuasi &w) {
    double m = 1;
    for (const auto &v : w.per_qudit) {
        m *= max_abs(v);
    }
    return m;
}

}  // namespace qpe
