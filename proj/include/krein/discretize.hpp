#pragma once

// Concrete instances: minimal Laplacians on grids (clamped column, clamped
// plate) and random instances for property tests.
//
// Grid functions live on interior nodes with the quadrature inner product
// ⟨u, v⟩ = w·Σ uᵢvᵢ (w = h in 1D, hx·hy in 2D). Coordinates are taken with
// respect to the orthonormal basis eᵢ/√w; the weight is a scalar, so every
// operator matrix is the plain finite-difference matrix and no rescaling of
// spectra is needed.
//
// The minimal operator acts on grid functions supported at depth ≥ 2 from
// the boundary, so applying the Dirichlet Laplacian never reads boundary
// data: a discrete analog of u = ∂u/∂n = 0.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "krein/dense.hpp"
#include "krein/eigen.hpp"
#include "krein/extension.hpp"
#include "krein/sparse.hpp"

namespace krein {

struct GridSpec {
  int dimension = 1;
  std::size_t nx = 0;
  std::size_t ny = 1;
  double lx = 1.0;
  double ly = 1.0;

  static GridSpec interval(std::size_t n);
  static GridSpec rectangle(std::size_t nx, std::size_t ny, double lx = 1.0, double ly = 1.0);

  double hx() const { return lx / static_cast<double>(nx + 1); }
  double hy() const { return ly / static_cast<double>(ny + 1); }
  double weight() const { return dimension == 1 ? hx() : hx() * hy(); }
  std::size_t nodes() const { return dimension == 1 ? nx : nx * ny; }
  std::string label() const;

  /// Throws GridTooSmall unless every axis has at least 5 interior nodes.
  void validate() const;
};

struct SparsePencil {
  SparseMatrix g;  // BᵀB
  SparseMatrix m;  // EᵀB
};

/// A grid operator with its deep-interior domain, kept sparse.
class GridProblem {
 public:
  GridProblem(GridSpec spec, SparseMatrix ambient, std::vector<std::size_t> domain_nodes);

  const GridSpec& spec() const noexcept { return spec_; }
  const SparseMatrix& ambient() const noexcept { return ambient_; }
  const std::vector<std::size_t>& domain_nodes() const noexcept { return domain_nodes_; }
  std::size_t ambient_dim() const noexcept { return ambient_.rows(); }
  std::size_t domain_dim() const noexcept { return domain_nodes_.size(); }
  std::string provenance() const;

  /// B = A·E as a sparse n×d matrix.
  SparseMatrix image() const;
  SparsePencil pencil() const;
  /// Dense model; throws SizeCapExceeded above `max_ambient`.
  RestrictedOperator restricted(std::size_t max_ambient = 4000) const;

 private:
  GridSpec spec_;
  SparseMatrix ambient_;
  std::vector<std::size_t> domain_nodes_;
};

/// Second-difference (2, −1)/h² with Dirichlet closure; domain nodes 2..N−1.
GridProblem interval_problem(std::size_t n);
/// Five-point Laplacian; domain = nodes whose 4-neighbourhood is interior.
GridProblem rectangle_problem(std::size_t nx, std::size_t ny, double lx = 1.0, double ly = 1.0);

RestrictedOperator interval_minimal_laplacian(std::size_t n);
RestrictedOperator rectangle_minimal_laplacian(std::size_t nx, std::size_t ny);

enum class SolveMethod { dense, iterative };

/// k smallest buckling eigenvalues of a grid problem.
Vector grid_pencil_eigenvalues(const GridProblem& problem, std::size_t k, SolveMethod method);

/// Deterministic generator for tests and instance generation. Uses only
/// integer output of mt19937_64, which is fully specified, so streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double normal();
  DenseMatrix gaussian(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 engine_;
};

/// Haar-like random orthogonal matrix (QR of a Gaussian, signs fixed).
DenseMatrix random_orthogonal(std::size_t n, Rng& rng);

/// A = VᵀΛV with log-uniform spectrum in [eps, 100·eps]; random d-dimensional domain.
RestrictedOperator random_instance(std::size_t n, std::size_t d, double eps, std::uint64_t seed);

/// Random symmetric PSD matrix GᵀG·scale with rank ≤ rank.
DenseMatrix random_psd(std::size_t n, std::size_t rank, double scale, Rng& rng);

enum class ReferenceProblem { clamped_column_1d, clamped_plate_square };

ReferenceProblem parse_reference_problem(const std::string& tag);

struct ContinuumReference {
  Vector eigenvalues;
  std::string provenance;
  double uncertainty = 0.0;
};

/// clamped_column_1d: λⱼ = kⱼ² for the positive roots of 2(1 − cos k) − k·sin k
/// (bracketed bisection). clamped_plate_square: Richardson extrapolation of
/// the discrete λ₁ over grids 15, 31, 63.
ContinuumReference continuum_reference(ReferenceProblem problem, std::size_t count = 4);

/// The clamped-column characteristic function 2(1 − cos k) − k·sin k.
double clamped_column_characteristic(double k);

}  // namespace krein
