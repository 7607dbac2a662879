#include "krein/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "krein/error.hpp"
#include "krein/kernels.hpp"

namespace krein {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
  for (const auto& t : entries)
    if (t.row >= rows || t.col >= cols)
      throw Error(Errc::DimensionMismatch, "from_triplets: entry outside matrix");
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseMatrix s(rows, cols);
  s.col_idx_.reserve(entries.size());
  s.values_.reserve(entries.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    while (k < entries.size() && entries[k].row == i) {
      const std::size_t j = entries[k].col;
      double v = 0.0;
      while (k < entries.size() && entries[k].row == i && entries[k].col == j) v += entries[k++].value;
      if (v != 0.0) {
        s.col_idx_.push_back(j);
        s.values_.push_back(v);
      }
    }
    s.row_ptr_[i + 1] = s.values_.size();
  }
  return s;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& a, double drop_below) {
  std::vector<Triplet> t;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > drop_below) t.push_back({i, j, a(i, j)});
  return from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(t));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  const auto begin = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto end = col_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

Vector SparseMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) throw Error(Errc::DimensionMismatch, "SparseMatrix::multiply");
  Vector y(rows_);
  if (rows_ > 0)
    kernels::csr_matvec(rows_, row_ptr_.data(), col_idx_.data(), values_.data(), x.data(), y.data());
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nonzeros());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) t.push_back({col_idx_[p], i, values_[p]});
  return from_triplets(cols_, rows_, std::move(t));
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_idx_[p]) = values_[p];
  return d;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nonzeros());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) t.push_back({i, col_idx_[p], values_[p]});
  return t;
}

SparseMatrix SparseMatrix::select(const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) const {
  constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> col_map(cols_, kAbsent);
  for (std::size_t k = 0; k < cols.size(); ++k) col_map.at(cols[k]) = k;
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t i = rows[r];
    for (std::size_t p = row_ptr_.at(i); p < row_ptr_[i + 1]; ++p)
      if (col_map[col_idx_[p]] != kAbsent) t.push_back({r, col_map[col_idx_[p]], values_[p]});
  }
  return from_triplets(rows.size(), cols.size(), std::move(t));
}

double SparseMatrix::norm_one() const {
  std::vector<double> sums(cols_, 0.0);
  for (std::size_t p = 0; p < values_.size(); ++p) sums[col_idx_[p]] += std::abs(values_[p]);
  return sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
}

double SparseMatrix::max_abs_asymmetry() const {
  if (rows_ != cols_) throw Error(Errc::NonSquare, "SparseMatrix::max_abs_asymmetry");
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      m = std::max(m, std::abs(values_[p] - at(col_idx_[p], i)));
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "sparse matmul: inner dimensions");
  std::vector<Triplet> t;
  std::map<std::size_t, double> row;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    row.clear();
    for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      const std::size_t k = a.col_idx()[p];
      const double av = a.values()[p];
      for (std::size_t q = b.row_ptr()[k]; q < b.row_ptr()[k + 1]; ++q) row[b.col_idx()[q]] += av * b.values()[q];
    }
    for (const auto& [j, v] : row) t.push_back({i, j, v});
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(t));
}

SparseMatrix add(double a, const SparseMatrix& x, double b, const SparseMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw Error(Errc::DimensionMismatch, "sparse add");
  auto t = x.triplets();
  for (auto& e : t) e.value *= a;
  for (auto e : y.triplets()) {
    e.value *= b;
    t.push_back(e);
  }
  return SparseMatrix::from_triplets(x.rows(), x.cols(), std::move(t));
}

SkylineCholesky::SkylineCholesky(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::NonSquare, "SkylineCholesky: matrix is not square");
  const std::size_t n = a.rows();
  first_.resize(n);
  offset_.resize(n + 1);
  offset_[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t f = i;
    for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) f = std::min(f, a.col_idx()[p]);
    first_[i] = f;
    offset_[i + 1] = offset_[i] + (i - f + 1);
  }
  values_.assign(offset_[n], 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      const std::size_t j = a.col_idx()[p];
      if (j <= i) values_[offset_[i] + (j - first_[i])] = a.values()[p];
    }

  for (std::size_t i = 0; i < n; ++i) {
    double* li = values_.data() + offset_[i];
    const std::size_t fi = first_[i];
    for (std::size_t j = fi; j < i; ++j) {
      const double* lj = values_.data() + offset_[j];
      const std::size_t fj = first_[j];
      const std::size_t start = std::max(fi, fj);
      double s = li[j - fi];
      for (std::size_t p = start; p < j; ++p) s -= li[p - fi] * lj[p - fj];
      li[j - fi] = s / lj[j - fj];
    }
    double diag = li[i - fi];
    for (std::size_t p = fi; p < i; ++p) diag -= li[p - fi] * li[p - fi];
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw Error(Errc::NotPositiveDefinite, "SkylineCholesky: non-positive pivot at row " + std::to_string(i));
    li[i - fi] = std::sqrt(diag);
  }
}

Vector SkylineCholesky::solve(std::span<const double> b) const {
  const std::size_t n = size();
  if (b.size() != n) throw Error(Errc::DimensionMismatch, "SkylineCholesky::solve");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = values_.data() + offset_[i];
    double s = y[i];
    for (std::size_t p = first_[i]; p < i; ++p) s -= li[p - first_[i]] * y[p];
    y[i] = s / li[i - first_[i]];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const double* li = values_.data() + offset_[ii];
    y[ii] /= li[ii - first_[ii]];
    const double xi = y[ii];
    for (std::size_t p = first_[ii]; p < ii; ++p) y[p] -= li[p - first_[ii]] * xi;
  }
  return y;
}

namespace {

// M-orthogonalizes v against `basis` twice and normalizes it; returns false
// if v collapses below `drop` of its original M-norm.
bool orthonormalize_against(Vector& v, Vector& mv, const std::vector<Vector>& basis,
                            const std::vector<Vector>& mbasis, const SparseMatrix& m, double drop) {
  const double before = std::sqrt(std::max(0.0, dot(v, m.multiply(v))));
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const double c = dot(mbasis[i], v);
      for (std::size_t r = 0; r < v.size(); ++r) v[r] -= c * basis[i][r];
    }
  mv = m.multiply(v);
  const double after = std::sqrt(std::max(0.0, dot(v, mv)));
  if (!(after > drop * before) || !std::isfinite(after)) return false;
  for (double& x : v) x /= after;
  for (double& x : mv) x /= after;
  return true;
}

}  // namespace

PencilEigen smallest_pencil_eigs_iterative(const SparseMatrix& g, const SparseMatrix& m, std::size_t k,
                                           double shift, const LanczosOptions& options) {
  const std::size_t n = g.rows();
  if (g.rows() != g.cols() || m.rows() != m.cols()) throw Error(Errc::NonSquare, "iterative pencil: non-square");
  if (m.rows() != n) throw Error(Errc::DimensionMismatch, "iterative pencil: G and M differ in size");
  if (k == 0 || k > n) throw Error(Errc::DimensionMismatch, "iterative pencil: k must be in [1, n]");

  // Both factorizations double as the positive-definiteness checks.
  const SkylineCholesky m_chol(m);
  (void)m_chol;
  const SkylineCholesky op(shift == 0.0 ? g : add(1.0, g, -shift, m));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  auto random_vector = [&] {
    Vector v(n);
    for (double& x : v) x = normal(rng);
    return v;
  };

  const std::size_t block = std::min(n, std::max<std::size_t>(1, options.block_size));
  const std::size_t cap = options.max_basis == 0 ? n : std::min(n, std::max(options.max_basis, k + block));

  // basis: M-orthonormal Krylov vectors; images[j] = (G − σM)⁻¹ M basis[j].
  std::vector<Vector> basis, mbasis, images;

  auto push_random = [&]() {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Vector v = random_vector(), mv;
      if (orthonormalize_against(v, mv, basis, mbasis, m, 1e-8)) {
        basis.push_back(std::move(v));
        mbasis.push_back(std::move(mv));
        return;
      }
    }
    throw Error(Errc::ConvergenceFailure, "iterative pencil: could not extend the basis");
  };

  for (std::size_t b = 0; b < block; ++b) push_random();

  EigenDecomposition ritz;
  bool converged = false;
  while (true) {
    // Apply the shifted inverse to every basis vector without an image yet.
    const std::size_t first_new = images.size();
    for (std::size_t j = first_new; j < basis.size(); ++j) images.push_back(op.solve(mbasis[j]));
    const std::size_t size = images.size();

    if (size >= k) {
      DenseMatrix h(size, size);
      for (std::size_t j = 0; j < size; ++j)
        for (std::size_t i = 0; i <= j; ++i) h(i, j) = h(j, i) = dot(mbasis[i], images[j]);
      ritz = sym_eig(symmetrize(h), 1e-6);
      converged = true;
      for (std::size_t i = 0; i < k && converged; ++i) {
        const std::size_t col = size - 1 - i;
        const double theta = ritz.values[col];
        Vector r(n, 0.0);
        for (std::size_t p = 0; p < size; ++p) {
          const double s = ritz.vectors(p, col);
          for (std::size_t q = 0; q < n; ++q) r[q] += s * (images[p][q] - theta * basis[p][q]);
        }
        const double res = std::sqrt(std::max(0.0, dot(r, m.multiply(r))));
        if (res > options.tolerance * std::abs(theta)) converged = false;
      }
      if (converged || size >= cap) break;
    }

    // Next block: images of the newest block, M-orthogonalized against the basis.
    const std::size_t room = cap - basis.size();
    std::size_t added = 0;
    for (std::size_t j = first_new; j < size && added < room; ++j) {
      Vector v = images[j], mv;
      if (orthonormalize_against(v, mv, basis, mbasis, m, 1e-10)) {
        basis.push_back(std::move(v));
        mbasis.push_back(std::move(mv));
      } else {
        push_random();
      }
      ++added;
    }
    if (added == 0) break;
  }
  if (!converged && basis.size() < n)
    throw Error(Errc::ConvergenceFailure, "iterative pencil: basis cap reached before convergence");

  const std::size_t size = images.size();
  PencilEigen out;
  out.values.resize(k);
  out.vectors = DenseMatrix(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t col = size - 1 - i;
    const double theta = ritz.values[col];
    if (!(theta > 0.0)) throw Error(Errc::NotPositiveDefinite, "iterative pencil: non-positive Ritz value");
    Vector c(n, 0.0);
    for (std::size_t p = 0; p < size; ++p) {
      const double s = ritz.vectors(p, col);
      for (std::size_t r = 0; r < n; ++r) c[r] += s * basis[p][r];
    }
    const double nrm = std::sqrt(dot(c, m.multiply(c)));
    for (double& x : c) x /= nrm;
    out.values[i] = shift + 1.0 / theta;
    out.vectors.set_col(i, c);
  }
  canonicalize_column_signs(out.vectors);
  return out;
}

}  // namespace krein
