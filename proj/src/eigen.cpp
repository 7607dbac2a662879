#include "krein/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "krein/error.hpp"
#include "krein/factor.hpp"

namespace krein {

namespace {

constexpr int kMaxQlIterations = 60;

void check_symmetric_input(const DenseMatrix& h, double symmetry_tol, const char* who) {
  if (!h.is_square()) throw Error(Errc::NonSquare, std::string(who) + ": matrix is not square");
  if (!all_finite(h)) throw Error(Errc::InstanceInvalid, std::string(who) + ": non-finite entry");
  const double scale = norm_max(h);
  if (max_abs_asymmetry(h) > symmetry_tol * scale)
    throw Error(Errc::AsymmetryBeyondTolerance,
                std::string(who) + ": asymmetry exceeds tolerance");
}

// Householder reduction to tridiagonal form. On entry v holds the symmetric
// matrix; on exit d/e hold the diagonal/subdiagonal (e[0] = 0) and, when
// `accumulate` is set, v holds the orthogonal transformation.
void tridiagonalize(DenseMatrix& v, Vector& d, Vector& e, bool accumulate) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        const auto vj = v.col(j);
        for (std::size_t k = j + 1; k <= i - 1; ++k) {
          g += vj[k] * d[k];
          e[k] += vj[k] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        auto vj = v.col(j);
        for (std::size_t k = j; k <= i - 1; ++k) vj[k] -= (f * e[k] + g * d[k]);
        d[j] = vj[i - 1];
        vj[i] = 0.0;
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    for (std::size_t j = 0; j < n; ++j) d[j] = v(j, j);
    e[0] = 0.0;
    return;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      const auto vi1 = v.col(i + 1);
      for (std::size_t k = 0; k <= i; ++k) d[k] = vi1[k] / h;
      for (std::size_t j = 0; j <= i; ++j) {
        auto vj = v.col(j);
        double g = 0.0;
        for (std::size_t k = 0; k <= i; ++k) g += vi1[k] * vj[k];
        for (std::size_t k = 0; k <= i; ++k) vj[k] -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). Rotations are applied to v when
// `accumulate` is set.
void tridiagonal_ql(Vector& d, Vector& e, DenseMatrix& v, bool accumulate) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations)
          throw Error(Errc::ConvergenceFailure, "sym_eig: QL iteration cap exceeded");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            auto vi = v.col(i);
            auto vi1 = v.col(i + 1);
            for (std::size_t k = 0; k < n; ++k) {
              h = vi1[k];
              vi1[k] = s * vi[k] + c * h;
              vi[k] = c * vi[k] - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

std::vector<std::size_t> ascending_order(const Vector& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

}  // namespace

EigenDecomposition sym_eig(const DenseMatrix& h, double symmetry_tol) {
  check_symmetric_input(h, symmetry_tol, "sym_eig");
  const std::size_t n = h.rows();
  EigenDecomposition out;
  if (n == 0) return out;

  DenseMatrix v = symmetrize(h);
  Vector d(n), e(n);
  tridiagonalize(v, d, e, true);
  tridiagonal_ql(d, e, v, true);

  const auto order = ascending_order(d);
  out.values.resize(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    out.vectors.set_col(j, v.col(order[j]));
  }
  canonicalize_column_signs(out.vectors);
  return out;
}

Vector sym_eigvals(const DenseMatrix& h, double symmetry_tol) {
  check_symmetric_input(h, symmetry_tol, "sym_eigvals");
  const std::size_t n = h.rows();
  if (n == 0) return {};
  DenseMatrix v = symmetrize(h);
  Vector d(n), e(n);
  tridiagonalize(v, d, e, false);
  tridiagonal_ql(d, e, v, false);
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// C = L⁻¹ G L⁻ᵀ, symmetrized.
DenseMatrix reduce_pencil(const DenseMatrix& g, const Cholesky& chol) {
  const DenseMatrix x = chol.solve_lower(g);            // L⁻¹G
  return symmetrize(chol.solve_lower(x.transpose()));   // L⁻¹(L⁻¹G)ᵀ
}

void check_pencil_inputs(const DenseMatrix& g, const DenseMatrix& m, double symmetry_tol) {
  if (!g.is_square() || !m.is_square()) throw Error(Errc::NonSquare, "gen_eig_pd: non-square input");
  if (g.rows() != m.rows()) throw Error(Errc::DimensionMismatch, "gen_eig_pd: G and M differ in size");
  check_symmetric_input(g, symmetry_tol, "gen_eig_pd(G)");
  check_symmetric_input(m, symmetry_tol, "gen_eig_pd(M)");
}

}  // namespace

PencilEigen gen_eig_pd(const DenseMatrix& g, const DenseMatrix& m, double symmetry_tol) {
  check_pencil_inputs(g, m, symmetry_tol);
  const Cholesky chol(symmetrize(m));
  const auto standard = sym_eig(reduce_pencil(symmetrize(g), chol));
  PencilEigen out;
  out.values = standard.values;
  out.vectors = chol.solve_upper(standard.vectors);
  canonicalize_column_signs(out.vectors);
  return out;
}

Vector gen_eigvals_pd(const DenseMatrix& g, const DenseMatrix& m, double symmetry_tol) {
  check_pencil_inputs(g, m, symmetry_tol);
  const Cholesky chol(symmetrize(m));
  return sym_eigvals(reduce_pencil(symmetrize(g), chol));
}

SingularValueDecomposition thin_svd(const DenseMatrix& y) {
  const std::size_t m = y.rows();
  const std::size_t n = y.cols();
  if (m < n) throw Error(Errc::InvalidShape, "thin_svd: need rows >= cols");
  DenseMatrix u = y;
  DenseMatrix v = DenseMatrix::identity(n);
  const double tol = static_cast<double>(m) * std::numeric_limits<double>::epsilon();

  auto rotate = [](std::span<double> a, std::span<double> b, double c, double s) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double x = a[i];
      const double z = b[i];
      a[i] = c * x - s * z;
      b[i] = s * x + c * z;
    }
  };

  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = dot(u.col(p), u.col(p));
        const double beta = dot(u.col(q), u.col(q));
        const double gamma = dot(u.col(p), u.col(q));
        if (gamma == 0.0 || std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(u.col(p), u.col(q), c, s);
        rotate(v.col(p), v.col(q), c, s);
      }
    }
  }
  if (!converged) throw Error(Errc::ConvergenceFailure, "thin_svd: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  Vector sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    order[j] = j;
    sigma[j] = norm2(u.col(j));
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  SingularValueDecomposition out;
  out.values.resize(n);
  out.left = DenseMatrix(m, n);
  out.right = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.values[k] = sigma[j];
    out.right.set_col(k, v.col(j));
    if (sigma[j] > 0.0) {
      Vector col(u.col(j).begin(), u.col(j).end());
      for (double& x : col) x /= sigma[j];
      out.left.set_col(k, col);
    }
  }
  return out;
}

PencilEigen gram_pencil_eig(const DenseMatrix& factor, const DenseMatrix& m, double symmetry_tol) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "gram_pencil_eig: M is not square");
  if (factor.cols() != m.rows()) throw Error(Errc::DimensionMismatch, "gram_pencil_eig: factor and M differ");
  check_symmetric_input(m, symmetry_tol, "gram_pencil_eig(M)");
  const Cholesky chol(symmetrize(m));
  const DenseMatrix scaled = chol.solve_lower(factor.transpose()).transpose();  // F·L⁻ᵀ
  const SingularValueDecomposition svd = thin_svd(scaled);
  const std::size_t n = m.rows();
  PencilEigen out;
  out.values.resize(n);
  DenseMatrix w(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = n - 1 - k;  // ascending λ
    out.values[k] = svd.values[j] * svd.values[j];
    w.set_col(k, svd.right.col(j));
  }
  out.vectors = chol.solve_upper(w);
  canonicalize_column_signs(out.vectors);
  return out;
}

DenseMatrix psd_inv_sqrt(const DenseMatrix& h) {
  const auto eig = sym_eig(h);
  if (eig.values.empty()) return {};
  if (!(eig.values.front() > 0.0))
    throw Error(Errc::NotPositiveDefinite, "psd_inv_sqrt: smallest eigenvalue is not positive");
  DenseMatrix scaled = eig.vectors;
  for (std::size_t j = 0; j < scaled.cols(); ++j) {
    const double s = 1.0 / std::sqrt(eig.values[j]);
    for (double& x : scaled.col(j)) x *= s;
  }
  return symmetrize(scaled * eig.vectors.transpose());
}

double max_principal_angle_sin(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(Errc::DimensionMismatch, "max_principal_angle_sin: bases differ in shape");
  if (x.cols() == 0) return 0.0;
  const DenseMatrix residual = y - x * matmul_tn(x, y);
  return std::min(1.0, norm_two(residual));
}

}  // namespace krein
