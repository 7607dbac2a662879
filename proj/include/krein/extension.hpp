#pragma once

// Finite-dimensional model of a strictly positive symmetric operator S
// defined on a proper subspace D of ℝⁿ, and its two extremal nonnegative
// self-adjoint extensions.
//
// S is stored by its action on an orthonormal basis E of D: column j of B
// is S applied to column j of E. The adjoint S* is a linear relation here;
// its kernel is ran(B)^⊥. The Friedrichs extension is the relation
// {(v, Sv + h) : v ∈ D, h ∈ D^⊥}, carried through its inverse and
// resolvents only.

#include <cstddef>
#include <optional>
#include <string>

#include "krein/dense.hpp"
#include "krein/tolerances.hpp"

namespace krein {

class RestrictedOperator {
 public:
  /// S = A restricted to span(domain_basis). The basis is orthonormalized;
  /// ε is the smallest eigenvalue of EᵀAE and must exceed epsilon_floor.
  static RestrictedOperator from_ambient(const DenseMatrix& ambient, const DenseMatrix& domain_basis,
                                         double epsilon_floor = 0.0, const Tolerances& tol = {},
                                         std::string provenance = "from_ambient");

  /// Validates every invariant of (E, B). With epsilon < 0, ε is set to
  /// λ_min(EᵀB); otherwise the given ε must satisfy λ_min(EᵀB) ≥ ε − tol.
  static RestrictedOperator from_parts(DenseMatrix basis, DenseMatrix image, double epsilon = -1.0,
                                       const Tolerances& tol = {}, std::string provenance = "from_parts");

  std::size_t ambient_dim() const noexcept { return basis_.rows(); }
  std::size_t domain_dim() const noexcept { return basis_.cols(); }
  std::size_t deficiency() const noexcept { return ambient_dim() - domain_dim(); }

  /// E (n×d), orthonormal basis of D.
  const DenseMatrix& basis() const noexcept { return basis_; }
  /// B = S·E (n×d).
  const DenseMatrix& image() const noexcept { return image_; }
  /// EᵀB, symmetrized: the compression of S to D.
  const DenseMatrix& compression() const noexcept { return compression_; }
  double epsilon() const noexcept { return epsilon_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// The ambient symmetric operator A with B = A·E, when the instance was
  /// built from one. It is itself a nonnegative extension of S if A ⪰ 0.
  const std::optional<DenseMatrix>& ambient() const noexcept { return ambient_; }
  RestrictedOperator with_ambient(DenseMatrix ambient) const;

 private:
  RestrictedOperator(DenseMatrix basis, DenseMatrix image, DenseMatrix compression, double epsilon,
                     std::string provenance);

  DenseMatrix basis_;
  DenseMatrix image_;
  DenseMatrix compression_;
  double epsilon_;
  std::string provenance_;
  std::optional<DenseMatrix> ambient_;
};

struct ExtensionBundle {
  DenseMatrix krein;               // SK, n×n
  DenseMatrix friedrichs_inverse;  // F, n×n, ker F = D^⊥
  DenseMatrix adjoint_kernel;      // K, n×(n−d), ONB of ker(S*) = ran(B)^⊥
  DenseMatrix range_basis;         // Q, n×d, ONB of ran(S)
  DenseMatrix domain_complement;   // N, n×(n−d), ONB of D^⊥
};

DenseMatrix adjoint_kernel(const RestrictedOperator& op);

/// SK·[E K] = [B 0]. Throws IllConditionedDecomposition when cond([E K])
/// exceeds the cap.
DenseMatrix krein_extension(const RestrictedOperator& op, const Tolerances& tol = {});

/// F(B·c + h) = E·c for h ∈ D^⊥, i.e. F = [E 0]·[B N]⁻¹.
DenseMatrix friedrichs_inverse(const RestrictedOperator& op, const Tolerances& tol = {});

/// (S_F + a)⁻¹ = E·(EᵀB + a·I)⁻¹·Eᵀ.
DenseMatrix friedrichs_resolvent(const RestrictedOperator& op, double a);

ExtensionBundle build_extensions(const RestrictedOperator& op, const Tolerances& tol = {});

/// Qᵀ·F·Q: the inverse of the reduced Krein operator in range coordinates.
DenseMatrix reduced_krein_inverse(const RestrictedOperator& op, const ExtensionBundle& bundle);

struct DomainSplit {
  Vector domain_part;  // u = F·SK·v ∈ D
  Vector kernel_part;  // w = v − u ∈ ker(S*)
};

DomainSplit domain_decompose(const RestrictedOperator& op, const ExtensionBundle& bundle,
                             std::span<const double> v);

struct MuSequence {
  Vector friedrichs;  // ascending eigenvalues of the Friedrichs operator part
  Vector krein;       // ascending nonzero eigenvalues of SK
  bool ordered = false;
};

MuSequence mu_sequence(const RestrictedOperator& op, const ExtensionBundle& bundle, std::size_t j_max,
                       const Tolerances& tol = {});

/// Smallest eigenvalues of the two resolvent differences, each scaled by a
/// (so that −tol is the pass threshold).
struct ResolventSandwich {
  double lower_margin = 0.0;  // λ_min((S̃+a)⁻¹ − (S_F+a)⁻¹)·a
  double upper_margin = 0.0;  // λ_min((SK+a)⁻¹ − (S̃+a)⁻¹)·a
  bool holds = false;
};

/// The two extremal resolvents at one shift, reusable across candidates.
struct ResolventBounds {
  double shift = 0.0;
  DenseMatrix friedrichs;  // (S_F + a)⁻¹
  DenseMatrix krein;       // (SK + a)⁻¹
};

ResolventBounds resolvent_bounds(const RestrictedOperator& op, const ExtensionBundle& bundle, double a);

/// (S + a)⁻¹ for symmetric S with S + a positive definite, refined with
/// extended-precision residuals.
DenseMatrix shifted_inverse(const DenseMatrix& s, double a);

/// Checks (S_F + a)⁻¹ ⪯ (S̃ + a)⁻¹ ⪯ (SK + a)⁻¹. Throws NotAnExtension if
/// S̃·E ≠ B, NonpositiveShift if a ≤ 0.
ResolventSandwich resolvent_sandwich(const RestrictedOperator& op, const ExtensionBundle& bundle,
                                     const DenseMatrix& candidate, double a, const Tolerances& tol = {});
ResolventSandwich resolvent_sandwich(const RestrictedOperator& op, const ResolventBounds& bounds,
                                     const DenseMatrix& candidate, const Tolerances& tol = {});

bool extension_order_check(const RestrictedOperator& op, const ExtensionBundle& bundle,
                           const DenseMatrix& candidate, double a, const Tolerances& tol = {});

/// SK + N·W·Nᵀ for symmetric PSD W of size (n−d): every nonnegative
/// self-adjoint extension of S has this form.
DenseMatrix nonnegative_extension(const ExtensionBundle& bundle, const DenseMatrix& w);

}  // namespace krein
