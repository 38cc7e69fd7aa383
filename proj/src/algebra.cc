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

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpe {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count does not match its shape");
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); i++) {
        t += (*this)(i, i);
    }
    return t;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix &other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    ComplexMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t k = 0; k < cols_; k++) {
            cplx a = (*this)(r, k);
            if (a == cplx{}) {
                continue;
            }
            for (size_t c = 0; c < other.cols_; c++) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix sum shape mismatch");
    }
    ComplexMatrix out = *this;
    for (size_t i = 0; i < data_.size(); i++) {
        out.data_[i] += other.data_[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix &other) const {
    return *this + other * cplx{-1.0};
}

ComplexMatrix ComplexMatrix::operator*(cplx scalar) const {
    ComplexMatrix out = *this;
    for (auto &v : out.data_) {
        v *= scalar;
    }
    return out;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (!is_square() || !all_finite()) {
        return false;
    }
    return max_abs_diff(adjoint() * *this, identity(rows_)) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!is_square() || !all_finite()) {
        return false;
    }
    return max_abs_diff(adjoint(), *this) <= tol;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    double m = 0;
    auto da = a.data();
    auto db = b.data();
    for (size_t i = 0; i < da.size(); i++) {
        m = std::max(m, std::abs(da[i] - db[i]));
    }
    return m;
}

cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw std::invalid_argument("trace_of_product shape mismatch");
    }
    cplx t = 0;
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            t += a(r, c) * b(c, r);
        }
    }
    return t;
}

PureState::PureState(std::vector<cplx> amplitudes, bool normalize) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw std::invalid_argument("state vector must be nonempty");
    }
    double n = norm();
    if (!std::isfinite(n)) {
        throw std::invalid_argument("state vector has non-finite amplitudes");
    }
    if (normalize) {
        if (n == 0) {
            throw std::invalid_argument("cannot normalize the zero vector");
        }
        for (auto &a : amps_) {
            a /= n;
        }
    } else if (std::abs(n - 1.0) > 1e-12) {
        throw std::invalid_argument("state vector is not normalized (norm " + std::to_string(n) + ")");
    }
}

PureState PureState::basis(size_t dim, size_t index) {
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    std::vector<cplx> v(dim);
    v[index] = 1.0;
    return PureState(std::move(v));
}

double PureState::norm() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

ComplexMatrix PureState::density_matrix() const {
    ComplexMatrix rho(dim(), dim());
    for (size_t r = 0; r < dim(); r++) {
        for (size_t c = 0; c < dim(); c++) {
            rho(r, c) = amps_[r] * std::conj(amps_[c]);
        }
    }
    return rho;
}

bool is_odd_prime(int d) {
    if (d < 3 || d % 2 == 0) {
        return false;
    }
    for (int f = 3; f * f <= d; f += 2) {
        if (d % f == 0) {
            return false;
        }
    }
    return true;
}

cplx root_of_unity(int d, long long k) {
    long long r = ((k % d) + d) % d;
    if (r == 0) {
        return 1.0;
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

namespace {

void require_odd_prime(int d) {
    if (!is_odd_prime(d)) {
        throw std::invalid_argument("d must be an odd prime (got " + std::to_string(d) + ")");
    }
}

void require_qutrit(int d, std::string_view name) {
    if (d != 3) {
        throw std::invalid_argument(std::string(name) + " is only defined for d = 3");
    }
}

}  // namespace

ComplexMatrix gate_x(int d) {
    require_odd_prime(d);
    ComplexMatrix m(d, d);
    for (int j = 0; j < d; j++) {
        m((j + 1) % d, j) = 1.0;
    }
    return m;
}

ComplexMatrix gate_z(int d) {
    require_odd_prime(d);
    ComplexMatrix m(d, d);
    for (int j = 0; j < d; j++) {
        m(j, j) = root_of_unity(d, j);
    }
    return m;
}

ComplexMatrix gate_fourier(int d) {
    require_odd_prime(d);
    ComplexMatrix m(d, d);
    double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; k++) {
        for (int j = 0; j < d; j++) {
            m(k, j) = root_of_unity(d, static_cast<long long>(j) * k) * s;
        }
    }
    return m;
}

ComplexMatrix gate_phase(int d) {
    require_odd_prime(d);
    ComplexMatrix m(d, d);
    for (long long j = 0; j < d; j++) {
        m(j, j) = root_of_unity(d, j * (j - 1) / 2);
    }
    return m;
}

ComplexMatrix gate_sum(int d) {
    require_odd_prime(d);
    ComplexMatrix m(d * d, d * d);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            m(a * d + (a + b) % d, a * d + b) = 1.0;
        }
    }
    return m;
}

ComplexMatrix gate_m9() {
    ComplexMatrix m(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = root_of_unity(9, 1);
    m(2, 2) = root_of_unity(9, 8);
    return m;
}

PureState ket(int j, int d) {
    require_odd_prime(d);
    if (j < 0 || j >= d) {
        throw std::invalid_argument("ket index out of range");
    }
    return PureState::basis(d, j);
}

PureState magic_state() {
    double s = 1.0 / std::sqrt(3.0);
    return PureState({cplx{s}, root_of_unity(9, 1) * s, root_of_unity(9, 8) * s});
}

Element standard_element(std::string_view name, int d, int index) {
    require_odd_prime(d);
    if (name == "I") {
        return ComplexMatrix::identity(d);
    }
    if (name == "X") {
        return gate_x(d);
    }
    if (name == "Z") {
        return gate_z(d);
    }
    if (name == "F") {
        return gate_fourier(d);
    }
    if (name == "P") {
        return gate_phase(d);
    }
    if (name == "SUM") {
        return gate_sum(d);
    }
    if (name == "M9") {
        require_qutrit(d, name);
        return gate_m9();
    }
    if (name == "ket") {
        return ket(index, d);
    }
    if (name == "magic") {
        require_qutrit(d, name);
        return magic_state();
    }
    throw std::invalid_argument("unknown catalog element '" + std::string(name) + "'");
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            cplx v = a(ar, ac);
            if (v == cplx{}) {
                continue;
            }
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor of an empty list");
    }
    ComplexMatrix out = factors[0];
    for (size_t i = 1; i < factors.size(); i++) {
        out = tensor(out, factors[i]);
    }
    return out;
}

size_t ipow(size_t base, size_t exp) {
    size_t r = 1;
    for (size_t i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

void apply_local_inplace(const ComplexMatrix &u, std::span<const size_t> support, std::span<cplx> amps,
                         size_t num_qudits, size_t d) {
    size_t k = support.size();
    if (k == 0 || !u.is_square() || u.rows() != ipow(d, k)) {
        throw std::invalid_argument("gate dimension does not match its support");
    }
    if (amps.size() != ipow(d, num_qudits)) {
        throw std::invalid_argument("state dimension does not match qudit count");
    }
    for (size_t i = 0; i < k; i++) {
        if (support[i] >= num_qudits) {
            throw std::invalid_argument("qudit index out of range");
        }
        for (size_t j = 0; j < i; j++) {
            if (support[i] == support[j]) {
                throw std::invalid_argument("repeated support index");
            }
        }
    }

    size_t local = u.rows();
    std::vector<size_t> offsets(local, 0);
    for (size_t idx = 0; idx < local; idx++) {
        size_t rem = idx;
        size_t off = 0;
        for (size_t pos = k; pos-- > 0;) {
            size_t digit = rem % d;
            rem /= d;
            off += digit * ipow(d, num_qudits - 1 - support[pos]);
        }
        offsets[idx] = off;
    }

    std::vector<bool> in_support(num_qudits, false);
    for (size_t s : support) {
        in_support[s] = true;
    }

    std::vector<cplx> in(local), out(local);
    size_t total = amps.size();
    for (size_t base = 0; base < total; base++) {
        // Skip bases whose support digits are nonzero.
        bool ok = true;
        for (size_t s : support) {
            if ((base / ipow(d, num_qudits - 1 - s)) % d != 0) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        for (size_t i = 0; i < local; i++) {
            in[i] = amps[base + offsets[i]];
        }
        for (size_t r = 0; r < local; r++) {
            cplx acc = 0;
            for (size_t c = 0; c < local; c++) {
                acc += u(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t i = 0; i < local; i++) {
            amps[base + offsets[i]] = out[i];
        }
    }
}

PureState apply_local(const ComplexMatrix &u, std::span<const size_t> support, const PureState &psi,
                      size_t num_qudits) {
    if (support.empty() || num_qudits == 0) {
        throw std::invalid_argument("empty support");
    }
    if (!u.is_unitary(1e-10)) {
        throw std::invalid_argument("apply_local expects a unitary; use apply_local_inplace for general operators");
    }
    // Recover d from the gate dimension.
    size_t d = static_cast<size_t>(std::llround(std::pow(static_cast<double>(u.rows()), 1.0 / support.size())));
    std::vector<cplx> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    apply_local_inplace(u, support, amps, num_qudits, d);
    return PureState(std::move(amps), true);
}

std::pair<double, double> hermitian_eigen_range(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("eigenvalues of a non-square matrix");
    }
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            e(r, c) = m(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace qpe
