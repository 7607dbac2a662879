#include "krein/dense.hpp"

#include <algorithm>
#include <cmath>

#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/kernels.hpp"

namespace krein {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, std::string(op) + ": shape mismatch");
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::DimensionMismatch, "from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

DenseMatrix DenseMatrix::column(std::span<const double> v) {
  DenseMatrix m(v.size(), 1);
  std::copy(v.begin(), v.end(), m.data_.begin());
  return m;
}

Vector DenseMatrix::col_vector(std::size_t j) const {
  auto c = col(j);
  return Vector(c.begin(), c.end());
}

void DenseMatrix::set_col(std::size_t j, std::span<const double> v) {
  if (v.size() != rows_) throw Error(Errc::DimensionMismatch, "set_col: length mismatch");
  std::copy(v.begin(), v.end(), col(j).begin());
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw Error(Errc::DimensionMismatch, "block: out of range");
  DenseMatrix b(nr, nc);
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t i = 0; i < nr; ++i) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matmul: inner dimensions");
  DenseMatrix c(a.rows(), b.cols());
  if (c.empty()) return c;
  kernels::gemm_nn(a.rows(), b.cols(), a.cols(), a.data().data(), b.data().data(),
                   c.data().data());
  return c;
}

DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "matmul_tn: inner dimensions");
  DenseMatrix c(a.cols(), b.cols());
  if (c.empty()) return c;
  kernels::gemm_tn(a.cols(), b.cols(), a.rows(), a.data().data(), b.data().data(),
                   c.data().data());
  return c;
}

Vector operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matvec: length mismatch");
  Vector y(a.rows());
  if (!y.empty()) kernels::gemv(a.rows(), a.cols(), a.data().data(), x.data(), y.data());
  return y;
}

Vector matvec_t(const DenseMatrix& a, std::span<const double> x) {
  if (a.rows() != x.size()) throw Error(Errc::DimensionMismatch, "matvec_t: length mismatch");
  Vector y(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) y[j] = dot(a.col(j), x);
  return y;
}

DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "hcat: row counts differ");
  DenseMatrix c(a.rows(), a.cols() + b.cols());
  std::copy(a.data().begin(), a.data().end(), c.data().begin());
  std::copy(b.data().begin(), b.data().end(), c.data().begin() + a.data().size());
  return c;
}

double norm_max(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double norm_fro(const DenseMatrix& a) { return norm2(a.data()); }

double norm_one(const DenseMatrix& a) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (double v : a.col(j)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

double norm_two(const DenseMatrix& a) {
  if (a.empty()) return 0.0;
  const DenseMatrix gram = a.rows() >= a.cols() ? matmul_tn(a, a) : matmul_tn(a.transpose(), a.transpose());
  const auto values = sym_eigvals(symmetrize(gram));
  return std::sqrt(std::max(0.0, values.back()));
}

double max_abs_asymmetry(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "max_abs_asymmetry");
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = j + 1; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j) - a(j, i)));
  return m;
}

DenseMatrix symmetrize(const DenseMatrix& a) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "symmetrize");
  DenseMatrix s(a.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

bool all_finite(const DenseMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](double v) { return std::isfinite(v); });
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

Vector axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y) {
  Vector z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = alpha * x[i] + beta * y[i];
  return z;
}

void canonicalize_column_signs(DenseMatrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    auto c = v.col(j);
    double big = 0.0;
    for (double x : c) big = std::max(big, std::abs(x));
    const double tiny = 1e-10 * big;
    for (double x : c) {
      if (std::abs(x) > tiny) {
        if (x < 0.0)
          for (double& y : c) y = -y;
        break;
      }
    }
  }
}

}  // namespace krein
