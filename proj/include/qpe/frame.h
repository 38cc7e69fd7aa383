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

#ifndef QPE_FRAME_H
#define QPE_FRAME_H

#include <cstdint>
#include <memory>
#include <vector>

#include "qpe/algebra.h"

namespace qpe {

/// Largest dimension accepted by `Frame::wigner`.
inline constexpr int kMaxWignerDim = 13;

/// A nonzero entry of an operator, used for cheap traces against dense
/// matrices. Frame operators of the Wigner frame have one entry per column.
struct SparseEntry {
    uint32_t row;
    uint32_t col;
    cplx value;
};
using SparseOp = std::vector<SparseEntry>;

SparseOp to_sparse(const ComplexMatrix &m, double drop_below = 0.0);
/// Kronecker product of sparse operators with local dimensions `dim`.
SparseOp sparse_tensor(const SparseOp &a, const SparseOp &b, size_t b_dim);
/// Tr(S M) for sparse S.
cplx sparse_trace(const SparseOp &s, const ComplexMatrix &m);

/// Single-qudit frame {F(lambda)} with dual {G(lambda)}:
///   sum_lambda F(lambda) = I,   A = sum_lambda G(lambda) Tr[A F(lambda)].
/// Multi-qudit frames are tensor products, with the phase-point index of
/// qudit 0 most significant.
class Frame {
   public:
    /// Discrete Wigner frame for odd prime d, with phase points
    /// lambda = (q, p) enumerated as index q * d + p. Displacements are
    /// D(q,p) = omega^{-q p / 2} Z^p X^q (1/2 taken mod d), the phase-point
    /// operators are A(0) = (1/d) sum D, A(lambda) = D A(0) D^dagger, and
    /// F = A / d, G = A.
    static Frame wigner(int d);

    /// Accepts any operator pair that passes normalization and duality
    /// (tolerance 1e-10).
    static Frame custom(int d, std::vector<ComplexMatrix> f, std::vector<ComplexMatrix> g);

    int dim() const { return d_; }
    size_t size() const { return f_.size(); }
    bool is_wigner() const { return wigner_; }

    const ComplexMatrix &f(size_t point) const { return f_[point]; }
    const ComplexMatrix &g(size_t point) const { return g_[point]; }
    const SparseOp &f_sparse(size_t point) const { return f_sparse_[point]; }
    const SparseOp &g_sparse(size_t point) const { return g_sparse_[point]; }

    /// Wigner coordinates (q, p) of a point index.
    std::pair<int, int> coords(size_t point) const { return {static_cast<int>(point) / d_, static_cast<int>(point) % d_}; }
    size_t index(int q, int p) const;

    /// max_entry |sum_lambda F(lambda) - I|.
    double normalization_error() const;
    /// Worst max-norm reconstruction error over the standard Hermitian basis.
    double duality_error() const;
    /// Reconstruction error for one Hermitian operator.
    double duality_error(const ComplexMatrix &a) const;

    /// Re Tr[F(lambda) op] for every point.
    std::vector<double> quasi_f(const ComplexMatrix &op) const;
    /// Re Tr[op G(lambda)] for every point.
    std::vector<double> quasi_g(const ComplexMatrix &op) const;

   private:
    Frame() = default;
    void build_sparse();

    int d_ = 0;
    bool wigner_ = false;
    std::vector<ComplexMatrix> f_;
    std::vector<ComplexMatrix> g_;
    std::vector<SparseOp> f_sparse_;
    std::vector<SparseOp> g_sparse_;
};

using FramePtr = std::shared_ptr<const Frame>;

/// Convenience constructor returning a shared frame.
FramePtr wigner_frame(int d);

/// Entries closer than this to zero are snapped to exactly zero, so that
/// rounding noise cannot masquerade as negativity.
inline constexpr double kClipThreshold = 1e-12;

inline double clip_small(double x) {
    return (x < kClipThreshold && x > -kClipThreshold) ? 0.0 : x;
}

}  // namespace qpe

#endif
