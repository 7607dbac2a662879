#pragma once

#include <vector>

#include "krein/dense.hpp"

namespace krein {

/// Ascending eigenvalues with orthonormal eigenvector columns. Each column is
/// sign-normalized so its first non-negligible entry is positive.
struct EigenDecomposition {
  Vector values;
  DenseMatrix vectors;
};

/// Generalized pencil G c = λ M c. Columns of `vectors` are M-orthonormal.
struct PencilEigen {
  Vector values;
  DenseMatrix vectors;
};

/// Full symmetric eigendecomposition (Householder tridiagonalization followed
/// by implicit QL). The input must be symmetric to `symmetry_tol`·‖H‖_max; it
/// is symmetrized before use.
EigenDecomposition sym_eig(const DenseMatrix& h, double symmetry_tol = 1e-12);

/// Eigenvalues only; skips the eigenvector accumulation.
Vector sym_eigvals(const DenseMatrix& h, double symmetry_tol = 1e-12);

/// Symmetric-definite pencil via Cholesky reduction M = LLᵀ and the standard
/// problem for L⁻¹GL⁻ᵀ.
PencilEigen gen_eig_pd(const DenseMatrix& g, const DenseMatrix& m, double symmetry_tol = 1e-12);
Vector gen_eigvals_pd(const DenseMatrix& g, const DenseMatrix& m, double symmetry_tol = 1e-12);

/// Thin SVD Y = U·diag(σ)·Vᵀ of an m×n matrix with m ≥ n, σ descending.
/// One-sided Jacobi: singular values carry relative accuracy governed by the
/// column scaling of Y, and YᵀY is never formed.
struct SingularValueDecomposition {
  Vector values;
  DenseMatrix left;   // m×n, orthonormal columns (zero columns for σ = 0)
  DenseMatrix right;  // n×n orthogonal
};

SingularValueDecomposition thin_svd(const DenseMatrix& y);

/// The pencil (FᵀF) c = λ M c for a tall factor F, without forming FᵀF:
/// with M = LLᵀ, λ = σ² and c = L⁻ᵀw for the SVD of F·L⁻ᵀ.
PencilEigen gram_pencil_eig(const DenseMatrix& factor, const DenseMatrix& m, double symmetry_tol = 1e-12);

/// H^{-1/2} for symmetric positive definite H.
DenseMatrix psd_inv_sqrt(const DenseMatrix& h);

/// Largest principal angle (as its sine) between the column spans of two
/// orthonormal bases with the same column count.
double max_principal_angle_sin(const DenseMatrix& x, const DenseMatrix& y);

}  // namespace krein
