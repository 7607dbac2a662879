#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace krein {

using Vector = std::vector<double>;

/// Dense real matrix stored column-major: entry (i, j) lives at data[i + j*rows].
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  /// Row-wise literal, e.g. from_rows({{1, 2}, {3, 4}}).
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix column(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i + j * rows_]; }

  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }
  Vector col_vector(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> v);

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  DenseMatrix transpose() const;
  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  DenseMatrix col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

/// A·B (parallel kernel).
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
/// Aᵀ·B without forming the transpose.
DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, std::span<const double> x);
Vector matvec_t(const DenseMatrix& a, std::span<const double> x);

/// [A B] side by side.
DenseMatrix hcat(const DenseMatrix& a, const DenseMatrix& b);

double norm_max(const DenseMatrix& a);
double norm_fro(const DenseMatrix& a);
/// Induced 1-norm (max column sum).
double norm_one(const DenseMatrix& a);
/// Spectral norm via the largest eigenvalue of AᵀA or AAᵀ.
double norm_two(const DenseMatrix& a);

double max_abs_asymmetry(const DenseMatrix& a);
DenseMatrix symmetrize(const DenseMatrix& a);
bool all_finite(const DenseMatrix& a);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
Vector axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y);

/// Flips each column so its first entry with |x| > tiny is positive.
void canonicalize_column_signs(DenseMatrix& v);

}  // namespace krein
