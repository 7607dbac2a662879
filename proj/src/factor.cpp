#include "krein/factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/kernels.hpp"

namespace krein {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Cholesky::Cholesky(const DenseMatrix& a) : l_(a.rows(), a.cols()) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "Cholesky: matrix is not square");
  const std::size_t n = a.rows();
  // Left-looking, column by column; only the lower triangle of `a` is read.
  for (std::size_t j = 0; j < n; ++j) {
    auto lj = l_.col(j);
    for (std::size_t i = j; i < n; ++i) lj[i] = a(i, j);
    for (std::size_t p = 0; p < j; ++p) {
      const auto lp = l_.col(p);
      const double ljp = lp[j];
      if (ljp == 0.0) continue;
      for (std::size_t i = j; i < n; ++i) lj[i] -= lp[i] * ljp;
    }
    const double pivot = lj[j];
    if (!(pivot > 0.0) || !std::isfinite(pivot))
      throw Error(Errc::NotPositiveDefinite,
                  "Cholesky: non-positive pivot at column " + std::to_string(j));
    const double root = std::sqrt(pivot);
    lj[j] = root;
    for (std::size_t i = j + 1; i < n; ++i) lj[i] /= root;
  }
}

DenseMatrix Cholesky::solve_lower(DenseMatrix x) const {
  if (x.rows() != size()) throw Error(Errc::DimensionMismatch, "Cholesky::solve_lower");
  if (!x.empty()) kernels::trsm_lower(size(), x.cols(), l_.data().data(), x.data().data());
  return x;
}

DenseMatrix Cholesky::solve_upper(DenseMatrix x) const {
  if (x.rows() != size()) throw Error(Errc::DimensionMismatch, "Cholesky::solve_upper");
  if (!x.empty()) kernels::trsm_lower_t(size(), x.cols(), l_.data().data(), x.data().data());
  return x;
}

DenseMatrix Cholesky::solve(DenseMatrix x) const { return solve_upper(solve_lower(std::move(x))); }

LU::LU(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "LU: matrix is not square");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double scale = norm_max(a);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    if (best <= static_cast<double>(n) * kEps * scale || best == 0.0) {
      singular_ = true;
      return;
    }
    if (piv != k) {
      std::swap(perm_[k], perm_[piv]);
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
    }
    const double inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu_(i, k) *= inv;
    for (std::size_t j = k + 1; j < n; ++j) {
      const double ukj = lu_(k, j);
      if (ukj == 0.0) continue;
      auto cj = lu_.col(j);
      const auto ck = lu_.col(k);
      for (std::size_t i = k + 1; i < n; ++i) cj[i] -= ck[i] * ukj;
    }
  }
}

DenseMatrix LU::solve(const DenseMatrix& x) const {
  if (singular_) throw Error(Errc::SingularToTolerance, "LU: matrix is singular to working precision");
  const std::size_t n = lu_.rows();
  if (x.rows() != n) throw Error(Errc::DimensionMismatch, "LU::solve");
  DenseMatrix y(n, x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    auto yj = y.col(j);
    const auto xj = x.col(j);
    for (std::size_t i = 0; i < n; ++i) yj[i] = xj[perm_[i]];
    for (std::size_t k = 0; k < n; ++k) {
      const double v = yj[k];
      if (v == 0.0) continue;
      const auto lk = lu_.col(k);
      for (std::size_t i = k + 1; i < n; ++i) yj[i] -= lk[i] * v;
    }
    for (std::size_t k = n; k-- > 0;) {
      yj[k] /= lu_(k, k);
      const double v = yj[k];
      const auto uk = lu_.col(k);
      for (std::size_t i = 0; i < k; ++i) yj[i] -= uk[i] * v;
    }
  }
  return y;
}

DenseMatrix linear_solve(const DenseMatrix& h, const DenseMatrix& rhs) {
  if (!h.is_square()) throw Error(Errc::NonSquare, "linear_solve: matrix is not square");
  if (rhs.rows() != h.rows()) throw Error(Errc::DimensionMismatch, "linear_solve: rhs rows");
  const LU lu(h);
  DenseMatrix x = lu.solve(rhs);
  x += lu.solve(rhs - h * x);

  const double hn = norm_one(h);
  const DenseMatrix r = rhs - h * x;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double bound = 1e-10 * hn * norm2(x.col(j));
    if (norm2(r.col(j)) > bound && norm2(r.col(j)) > 0.0)
      throw Error(Errc::SingularToTolerance, "linear_solve: residual above tolerance");
  }
  return x;
}

Vector linear_solve(const DenseMatrix& h, std::span<const double> rhs) {
  return linear_solve(h, DenseMatrix::column(rhs)).col_vector(0);
}

RangeComplement orthonormal_range_and_complement(const DenseMatrix& b,
                                                 std::optional<double> rank_tol) {
  const std::size_t n = b.rows();
  const std::size_t m = b.cols();
  if (n == 0) throw Error(Errc::DimensionMismatch, "orthonormal_range_and_complement: no rows");

  DenseMatrix r = b;
  std::vector<double> tau(std::min(n, m), 0.0);
  std::vector<double> colnorm(m);
  for (std::size_t j = 0; j < m; ++j) colnorm[j] = norm2(r.col(j));

  const std::size_t steps = std::min(n, m);
  double sigma_estimate = 0.0;
  double tol = 0.0;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    // Column pivoting on the trailing norms (recomputed, not downdated).
    std::size_t piv = k;
    double best = -1.0;
    for (std::size_t j = k; j < m; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += r(i, j) * r(i, j);
      if (s > best) {
        best = s;
        piv = j;
      }
    }
    if (piv != k)
      for (std::size_t i = 0; i < n; ++i) std::swap(r(i, k), r(i, piv));

    const double alpha_norm = std::sqrt(std::max(best, 0.0));
    if (k == 0) {
      sigma_estimate = alpha_norm;
      tol = rank_tol.value_or(static_cast<double>(std::max(n, m)) * kEps * sigma_estimate);
    }
    if (alpha_norm <= tol || alpha_norm == 0.0) break;
    ++rank;

    // Householder vector v with v[k] = 1 stored below the diagonal.
    const double x0 = r(k, k);
    const double beta = x0 >= 0.0 ? -alpha_norm : alpha_norm;
    const double v0 = x0 - beta;
    for (std::size_t i = k + 1; i < n; ++i) r(i, k) /= v0;
    tau[k] = (beta - x0) / beta;
    r(k, k) = beta;
    for (std::size_t j = k + 1; j < m; ++j) {
      double s = r(k, j);
      for (std::size_t i = k + 1; i < n; ++i) s += r(i, k) * r(i, j);
      s *= tau[k];
      r(k, j) -= s;
      for (std::size_t i = k + 1; i < n; ++i) r(i, j) -= s * r(i, k);
    }
  }

  // Accumulate the full orthogonal factor Q = H_0 H_1 ... H_{rank-1}.
  DenseMatrix q = DenseMatrix::identity(n);
  for (std::size_t kk = rank; kk-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      auto qj = q.col(j);
      double s = qj[kk];
      for (std::size_t i = kk + 1; i < n; ++i) s += r(i, kk) * qj[i];
      s *= tau[kk];
      if (s == 0.0) continue;
      qj[kk] -= s;
      for (std::size_t i = kk + 1; i < n; ++i) qj[i] -= s * r(i, kk);
    }
  }

  RangeComplement out;
  out.rank = rank;
  out.range = q.col_range(0, rank);
  out.complement = q.col_range(rank, n - rank);
  canonicalize_column_signs(out.range);
  canonicalize_column_signs(out.complement);
  return out;
}

PolarDecomposition polar_decomposition(const DenseMatrix& x) {
  if (!x.is_square()) throw Error(Errc::NonSquare, "polar_decomposition: matrix is not square");
  const std::size_t n = x.rows();
  PolarDecomposition out;
  DenseMatrix u = x;
  const DenseMatrix id = DenseMatrix::identity(n);
  bool scaled = true;
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= 100; ++it) {
    const DenseMatrix inv_t = linear_solve(u, id).transpose();
    double gamma = 1.0;
    if (scaled) gamma = std::sqrt(norm_fro(inv_t) / norm_fro(u));
    DenseMatrix next = 0.5 * (gamma * u + (1.0 / gamma) * inv_t);
    const double change = norm_fro(next - u) / norm_fro(next);
    u = std::move(next);
    // Scaling only helps far from convergence.
    if (change < 1e-2) scaled = false;
    const bool stalled = change < 1e-8 && change >= previous;
    previous = change;
    if (stalled || change <= 1e2 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(n))) {
      out.iterations = it;
      out.unitary = std::move(u);
      out.positive = symmetrize(matmul_tn(out.unitary, x));
      return out;
    }
  }
  throw Error(Errc::ConvergenceFailure, "polar_decomposition: Newton iteration did not converge");
}

double condition_number(const DenseMatrix& x) {
  if (!x.is_square()) throw Error(Errc::NonSquare, "condition_number");
  if (x.rows() == 0) return 1.0;
  const Vector sigma = thin_svd(x).values;
  if (!(sigma.back() > 0.0)) return std::numeric_limits<double>::infinity();
  return sigma.front() / sigma.back();
}

}  // namespace krein
