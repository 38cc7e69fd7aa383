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

#ifndef QPE_ALGEBRA_H
#define QPE_ALGEBRA_H

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace qpe {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix zeros(size_t rows, size_t cols) { return ComplexMatrix(rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }
    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;

    ComplexMatrix operator*(const ComplexMatrix &other) const;
    ComplexMatrix operator+(const ComplexMatrix &other) const;
    ComplexMatrix operator-(const ComplexMatrix &other) const;
    ComplexMatrix operator*(cplx scalar) const;

    /// Largest entrywise modulus.
    double max_abs() const;
    bool all_finite() const;
    bool is_unitary(double tol = 1e-10) const;
    bool is_hermitian(double tol = 1e-10) const;

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Max-norm of the difference, infinite when shapes differ.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Tr(A B) without forming the product.
cplx trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Normalized state vector.
class PureState {
   public:
    PureState() = default;
    /// Requires unit 2-norm within 1e-12 unless `normalize` is set, in which
    /// case any nonzero vector is rescaled.
    explicit PureState(std::vector<cplx> amplitudes, bool normalize = false);

    static PureState basis(size_t dim, size_t index);

    size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> mutable_amplitudes() { return amps_; }
    const cplx &operator[](size_t i) const { return amps_[i]; }

    double norm() const;
    ComplexMatrix density_matrix() const;

    bool operator==(const PureState &other) const = default;

   private:
    std::vector<cplx> amps_;
};

// Catalog. With omega = exp(2 pi i / d), on basis kets |j>:
//   X|j>   = |j+1 mod d>
//   Z|j>   = omega^j |j>
//   F|j>   = d^{-1/2} sum_k omega^{jk} |k>
//   P|j>   = omega^{j(j-1)/2} |j>
//   SUM|a,b> = |a, a+b mod d>      (first qudit is the control)
//   M9     = diag(1, xi, xi^8), xi = exp(2 pi i / 9), d = 3 only
//   magic  = (|0> + xi|1> + xi^8|2>) / sqrt(3), d = 3 only
// Phases are fixed as written; quasidistributions ignore global phase.

bool is_odd_prime(int d);
/// omega^k for the given dimension, with k reduced mod d.
cplx root_of_unity(int d, long long k);

ComplexMatrix gate_x(int d);
ComplexMatrix gate_z(int d);
ComplexMatrix gate_fourier(int d);
ComplexMatrix gate_phase(int d);
ComplexMatrix gate_sum(int d);
ComplexMatrix gate_m9();
PureState ket(int j, int d);
PureState magic_state();

using Element = std::variant<ComplexMatrix, PureState>;

/// Catalog lookup by name: "I", "X", "Z", "F", "P", "SUM", "M9" give
/// matrices; "ket" (uses `index`) and "magic" give states. Throws
/// std::invalid_argument for unknown names or unsupported dimensions.
Element standard_element(std::string_view name, int d, int index = 0);

/// Kronecker product, first factor most significant.
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Applies U to the qudits in `support` of an N-qudit state. Qudit 0 is the
/// most significant digit of the basis index, and support[0] is the most
/// significant digit of U's local index.
PureState apply_local(const ComplexMatrix &u, std::span<const size_t> support, const PureState &psi,
                      size_t num_qudits);

/// In-place variant on a raw amplitude vector of dimension d^N.
void apply_local_inplace(const ComplexMatrix &u, std::span<const size_t> support, std::span<cplx> amps,
                         size_t num_qudits, size_t d);

/// Smallest and largest eigenvalue of a Hermitian matrix.
std::pair<double, double> hermitian_eigen_range(const ComplexMatrix &m);

/// Integer power with overflow left to the caller.
size_t ipow(size_t base, size_t exp);

}  // namespace qpe

#endif
