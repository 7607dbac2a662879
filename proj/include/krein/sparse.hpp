#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "krein/dense.hpp"
#include "krein/eigen.hpp"

namespace krein {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix with sorted, duplicate-free column indices.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

  /// Duplicates are summed; explicit zeros are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);
  static SparseMatrix from_dense(const DenseMatrix& a, double drop_below = 0.0);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double at(std::size_t i, std::size_t j) const;
  Vector multiply(std::span<const double> x) const;
  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;
  std::vector<Triplet> triplets() const;

  /// Keeps rows and columns listed in `rows`/`cols`, in that order.
  SparseMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  /// Induced 1-norm.
  double norm_one() const;
  double max_abs_asymmetry() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
/// a·A + b·B
SparseMatrix add(double a, const SparseMatrix& x, double b, const SparseMatrix& y);

/// Envelope (skyline) Cholesky for sparse SPD matrices with a narrow profile,
/// such as lexicographically ordered grid operators.
class SkylineCholesky {
 public:
  explicit SkylineCholesky(const SparseMatrix& a);

  Vector solve(std::span<const double> b) const;
  std::size_t size() const noexcept { return first_.size(); }
  std::size_t envelope_size() const noexcept { return values_.size(); }

 private:
  // Row i stores L(i, first_[i] .. i) contiguously starting at offset_[i].
  std::vector<std::size_t> first_;
  std::vector<std::size_t> offset_;
  std::vector<double> values_;
};

struct LanczosOptions {
  std::size_t block_size = 4;  // handles eigenvalue multiplicity up to this
  std::size_t max_basis = 0;   // 0: grow up to n
  double tolerance = 1e-12;    // Ritz residual relative to θ = 1/(λ − shift)
  std::uint64_t seed = 0x5eed;
};

/// k smallest eigenpairs of G c = λ M c by block shift-invert Lanczos with
/// full M-orthogonal reorthogonalization and explicit Rayleigh–Ritz on the
/// Krylov basis. Requires shift below the smallest eigenvalue so that
/// G − shift·M is positive definite.
PencilEigen smallest_pencil_eigs_iterative(const SparseMatrix& g, const SparseMatrix& m, std::size_t k,
                                           double shift = 0.0, const LanczosOptions& options = {});

}  // namespace krein
