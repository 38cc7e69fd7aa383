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

#include "qpe/frame.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qpe {

SparseOp to_sparse(const ComplexMatrix &m, double drop_below) {
    SparseOp out;
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            cplx v = m(r, c);
            if (std::abs(v) > drop_below) {
                out.push_back({static_cast<uint32_t>(r), static_cast<uint32_t>(c), v});
            }
        }
    }
    return out;
}

SparseOp sparse_tensor(const SparseOp &a, const SparseOp &b, size_t b_dim) {
    SparseOp out;
    out.reserve(a.size() * b.size());
    for (const auto &ea : a) {
        for (const auto &eb : b) {
            out.push_back({static_cast<uint32_t>(ea.row * b_dim + eb.row),
                           static_cast<uint32_t>(ea.col * b_dim + eb.col), ea.value * eb.value});
        }
    }
    return out;
}

cplx sparse_trace(const SparseOp &s, const ComplexMatrix &m) {
    cplx t = 0;
    for (const auto &e : s) {
        t += e.value * m(e.col, e.row);
    }
    return t;
}

namespace {

long long inverse_of_two(int d) {
    return (d + 1) / 2;
}

ComplexMatrix displacement(int d, int q, int p) {
    ComplexMatrix x = gate_x(d);
    ComplexMatrix z = gate_z(d);
    ComplexMatrix out = ComplexMatrix::identity(d);
    for (int i = 0; i < q; i++) {
        out = out * x;
    }
    for (int i = 0; i < p; i++) {
        out = out * z;
    }
    // omega^{-qp/2} Z^p X^q, written in X^q Z^p order (Z^p X^q = omega^{qp} X^q Z^p).
    long long phase = inverse_of_two(d) * q * p;
    return out * root_of_unity(d, phase);
}

std::vector<ComplexMatrix> hermitian_basis(size_t n) {
    std::vector<ComplexMatrix> basis;
    for (size_t j = 0; j < n; j++) {
        for (size_t k = j; k < n; k++) {
            ComplexMatrix m(n, n);
            if (j == k) {
                m(j, j) = 1.0;
                basis.push_back(m);
                continue;
            }
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.push_back(m);
            ComplexMatrix im(n, n);
            im(j, k) = cplx{0, 1};
            im(k, j) = cplx{0, -1};
            basis.push_back(im);
        }
    }
    return basis;
}

}  // namespace

Frame Frame::wigner(int d) {
    if (!is_odd_prime(d)) {
        throw std::invalid_argument("d must be an odd prime (got " + std::to_string(d) + ")");
    }
    if (d > kMaxWignerDim) {
        throw std::invalid_argument("d = " + std::to_string(d) + " exceeds the supported maximum of " +
                                    std::to_string(kMaxWignerDim));
    }
    std::vector<ComplexMatrix> displacements;
    ComplexMatrix a0(d, d);
    for (int q = 0; q < d; q++) {
        for (int p = 0; p < d; p++) {
            displacements.push_back(displacement(d, q, p));
            a0 = a0 + displacements.back();
        }
    }
    a0 = a0 * cplx{1.0 / d};

    Frame frame;
    frame.d_ = d;
    frame.wigner_ = true;
    for (const auto &dq : displacements) {
        ComplexMatrix a = dq * a0 * dq.adjoint();
        // A(lambda) is a signed permutation times roots of unity; snap the
        // rounding noise in the structural zeros.
        for (auto &v : a.data()) {
            if (std::abs(v) < 1e-14) {
                v = 0;
            }
        }
        frame.g_.push_back(a);
        frame.f_.push_back(a * cplx{1.0 / d});
    }
    frame.build_sparse();
    return frame;
}

Frame Frame::custom(int d, std::vector<ComplexMatrix> f, std::vector<ComplexMatrix> g) {
    if (d < 2) {
        throw std::invalid_argument("frame dimension must be at least 2");
    }
    if (f.empty() || f.size() != g.size()) {
        throw std::invalid_argument("frame and dual frame must be nonempty and the same size");
    }
    for (size_t i = 0; i < f.size(); i++) {
        if (f[i].rows() != static_cast<size_t>(d) || !f[i].is_hermitian(1e-10) ||
            g[i].rows() != static_cast<size_t>(d) || !g[i].is_hermitian(1e-10)) {
            throw std::invalid_argument("frame operators must be Hermitian d x d matrices");
        }
    }
    Frame frame;
    frame.d_ = d;
    frame.f_ = std::move(f);
    frame.g_ = std::move(g);
    if (frame.normalization_error() > 1e-10) {
        throw std::invalid_argument("frame is not normalized: sum of F(lambda) differs from I");
    }
    if (frame.duality_error() > 1e-10) {
        throw std::invalid_argument("frame and dual frame fail the reconstruction identity");
    }
    frame.build_sparse();
    return frame;
}

void Frame::build_sparse() {
    f_sparse_.clear();
    g_sparse_.clear();
    for (size_t i = 0; i < f_.size(); i++) {
        f_sparse_.push_back(to_sparse(f_[i]));
        g_sparse_.push_back(to_sparse(g_[i]));
    }
}

size_t Frame::index(int q, int p) const {
    if (!wigner_) {
        throw std::logic_error("phase-space coordinates are only defined for the Wigner frame");
    }
    return static_cast<size_t>(((q % d_) + d_) % d_) * d_ + static_cast<size_t>(((p % d_) + d_) % d_);
}

double Frame::normalization_error() const {
    ComplexMatrix sum(d_, d_);
    for (const auto &m : f_) {
        sum = sum + m;
    }
    return max_abs_diff(sum, ComplexMatrix::identity(d_));
}

double Frame::duality_error(const ComplexMatrix &a) const {
    ComplexMatrix rebuilt(d_, d_);
    for (size_t i = 0; i < f_.size(); i++) {
        rebuilt = rebuilt + g_[i] * trace_of_product(a, f_[i]);
    }
    return max_abs_diff(rebuilt, a);
}

double Frame::duality_error() const {
    double worst = 0;
    for (const auto &b : hermitian_basis(d_)) {
        worst = std::max(worst, duality_error(b));
    }
    return worst;
}

std::vector<double> Frame::quasi_f(const ComplexMatrix &op) const {
    std::vector<double> out(size());
    for (size_t i = 0; i < size(); i++) {
        out[i] = sparse_trace(f_sparse_[i], op).real();
    }
    return out;
}

std::vector<double> Frame::quasi_g(const ComplexMatrix &op) const {
    std::vector<double> out(size());
    for (size_t i = 0; i < size(); i++) {
        out[i] = sparse_trace(g_sparse_[i], op).real();
    }
    return out;
}

FramePtr wigner_frame(int d) {
    return std::make_shared<const Frame>(Frame::wigner(d));
}

}  // namespace qpe
