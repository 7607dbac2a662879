#pragma once

// The abstract buckling problem S*S u = λ S u in domain coordinates: with
// u = E·c it reads G c = λ M c, where G = BᵀB is the Gram matrix of
// a(u, v) = (Su, Sv) and M = EᵀB that of b(u, v) = (u, Sv). The W-space is
// ℝᵈ with inner product cᵀGc; the embedding into the ambient space is c ↦ E·c.

#include <string>

#include "krein/dense.hpp"
#include "krein/eigen.hpp"
#include "krein/extension.hpp"
#include "krein/tolerances.hpp"

namespace krein {

struct GramPair {
  DenseMatrix a_form;  // G = BᵀB
  DenseMatrix b_form;  // M = EᵀB
};

GramPair gram_pair(const RestrictedOperator& op);

struct BucklingOperator {
  DenseMatrix matrix;  // T = G⁻¹M
  double w_norm = 0.0; // λ_max(G^{-1/2} M G^{-1/2})
};

BucklingOperator buckling_operator(const RestrictedOperator& op);

/// Ascending pencil eigenvalues with M-orthonormal coordinate vectors,
/// computed from B itself (G = BᵀB is never formed).
PencilEigen buckling_pencil_eigs(const RestrictedOperator& op);

/// Ŝ = Qᵀ·B, the isometry from W onto ran(S) in range coordinates.
DenseMatrix hat_s(const RestrictedOperator& op, const ExtensionBundle& bundle);

struct BucklingReport {
  Vector lambdas;
  Vector t_eigenvalues;               // ascending
  DenseMatrix t_matrix;
  DenseMatrix hat_s;
  DenseMatrix polar_unitary;          // Û = QᵀBG^{-1/2}
  double t_norm = 0.0;
  double epsilon_inv = 0.0;
  double hat_s_isometry_residual = 0.0;   // ‖ŜᵀŜ − G‖ / ‖G‖
  double polar_unitarity_residual = 0.0;  // ‖ÛᵀÛ − I‖
  double similarity_residual = 0.0;       // ‖QᵀFQ − Ŝ·T·Ŝ⁻¹‖ / ‖F‖
  double polar_residual = 0.0;            // ‖QᵀFQ − Û·G^{-1/2}MG^{-1/2}·Ûᵀ‖ / ‖F‖
  double reciprocal_residual = 0.0;       // max_j |μ_T,j·λ_j − 1|
  std::string provenance;
};

/// Builds both unitary-equivalence representations of the reduced Krein
/// inverse and records their residuals. All residual norms are max-abs.
BucklingReport verify_unitary_equivalence(const RestrictedOperator& op, const ExtensionBundle& bundle);

/// v = λ⁻¹·B·c. Throws NotAnEigenpair when (λ, c) is not a pencil
/// eigenpair to tol.correspondence, ZeroEigenvalue when λ ≈ 0.
Vector pencil_to_krein(const RestrictedOperator& op, double lambda, std::span<const double> coords,
                       const Tolerances& tol = {});
Vector pencil_to_krein(const RestrictedOperator& op, const GramPair& gp, double lambda,
                       std::span<const double> coords, const Tolerances& tol = {});

struct PencilPair {
  double lambda = 0.0;
  Vector coords;        // c with u = E·c
  Vector domain_vector; // u = F·SK·v
};

/// Inverse map for an eigenvector v of SK with nonzero eigenvalue.
PencilPair krein_to_pencil(const RestrictedOperator& op, const ExtensionBundle& bundle, std::span<const double> v,
                           const Tolerances& tol = {});

}  // namespace krein
