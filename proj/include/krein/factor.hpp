#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "krein/dense.hpp"

namespace krein {

/// Dense Cholesky factor A = LLᵀ. Throws NotPositiveDefinite on a
/// non-positive pivot.
class Cholesky {
 public:
  explicit Cholesky(const DenseMatrix& a);

  const DenseMatrix& lower() const noexcept { return l_; }
  std::size_t size() const noexcept { return l_.rows(); }

  /// L⁻¹·X
  DenseMatrix solve_lower(DenseMatrix x) const;
  /// L⁻ᵀ·X
  DenseMatrix solve_upper(DenseMatrix x) const;
  /// A⁻¹·X
  DenseMatrix solve(DenseMatrix x) const;

 private:
  DenseMatrix l_;
};

/// LU with partial pivoting, PA = LU.
class LU {
 public:
  explicit LU(const DenseMatrix& a);

  /// A⁻¹·X. Throws SingularToTolerance if a pivot vanished.
  DenseMatrix solve(const DenseMatrix& x) const;
  bool singular() const noexcept { return singular_; }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

/// Solves H·X = rhs with one step of iterative refinement. Throws
/// SingularToTolerance when H is numerically singular or the final residual
/// exceeds 1e-10·‖H‖·‖X‖.
DenseMatrix linear_solve(const DenseMatrix& h, const DenseMatrix& rhs);
Vector linear_solve(const DenseMatrix& h, std::span<const double> rhs);

/// Orthonormal bases of ran(B) and ran(B)^⊥ from a column-pivoted Householder
/// QR. `[range complement]` is square orthogonal.
struct RangeComplement {
  DenseMatrix range;
  DenseMatrix complement;
  std::size_t rank = 0;
};

/// Default rank_tol is max(rows, cols)·machine_eps·σ_max, with σ_max
/// estimated by the leading pivoted-QR diagonal.
RangeComplement orthonormal_range_and_complement(const DenseMatrix& b,
                                                 std::optional<double> rank_tol = std::nullopt);

/// X = U·H with U orthogonal and H symmetric positive definite, by the
/// scaled Newton iteration U ← (γU + U⁻ᵀ/γ)/2. Works on X directly, so the
/// accuracy is governed by cond(X) rather than cond(XᵀX).
struct PolarDecomposition {
  DenseMatrix unitary;
  DenseMatrix positive;
  int iterations = 0;
};

/// Throws NonSquare, SingularToTolerance, or ConvergenceFailure after 100 steps.
PolarDecomposition polar_decomposition(const DenseMatrix& x);

/// 2-norm condition number of a square matrix from its singular values.
double condition_number(const DenseMatrix& x);

}  // namespace krein
