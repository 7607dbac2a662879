#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "krein/discretize.hpp"
#include "krein/kernels.hpp"
#include "krein/sparse.hpp"

using namespace krein;

namespace {

std::vector<double> gaussian_data(std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(count);
  for (double& x : v) x = rng.normal();
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Runs `f` with 1 and with 4 threads and returns both outputs.
std::pair<std::vector<double>, std::vector<double>> with_thread_counts(
    const std::function<std::vector<double>()>& f) {
  const int saved = kernels::max_threads();
  kernels::set_max_threads(1);
  auto one = f();
  kernels::set_max_threads(4);
  auto four = f();
  kernels::set_max_threads(saved);
  return {std::move(one), std::move(four)};
}

std::vector<double> lower_factor(std::size_t n, std::uint64_t seed) {
  std::vector<double> l = gaussian_data(n * n, seed);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i < j) l[i + j * n] = 0.0;
      if (i == j) l[i + j * n] = 2.0 + std::abs(l[i + j * n]);
      if (i > j) l[i + j * n] *= 0.1;
    }
  return l;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("gemm_nn parallel matches serial") {
  for (std::size_t m : {1u, 7u, 64u, 130u}) {
    const std::size_t n = m + 3, k = m + 1;
    const auto a = gaussian_data(m * k, m);
    const auto b = gaussian_data(k * n, m + 1);
    std::vector<double> c(m * n), ref(m * n);
    kernels::gemm_nn(m, n, k, a.data(), b.data(), c.data());
    kernels::serial::gemm_nn(m, n, k, a.data(), b.data(), ref.data());
    CHECK(max_diff(c, ref) <= 1e-13 * static_cast<double>(k));
  }
}

TEST_CASE("gemm_tn parallel matches serial") {
  for (std::size_t m : {2u, 33u, 120u}) {
    const std::size_t n = m + 2, k = m + 5;
    const auto a = gaussian_data(k * m, 2 * m);
    const auto b = gaussian_data(k * n, 2 * m + 1);
    std::vector<double> c(m * n), ref(m * n);
    kernels::gemm_tn(m, n, k, a.data(), b.data(), c.data());
    kernels::serial::gemm_tn(m, n, k, a.data(), b.data(), ref.data());
    CHECK(max_diff(c, ref) <= 1e-13 * static_cast<double>(k));
  }
}

TEST_CASE("gemv parallel matches serial") {
  const std::size_t m = 300, n = 250;
  const auto a = gaussian_data(m * n, 1);
  const auto x = gaussian_data(n, 2);
  std::vector<double> y(m), ref(m);
  kernels::gemv(m, n, a.data(), x.data(), y.data());
  kernels::serial::gemv(m, n, a.data(), x.data(), ref.data());
  CHECK(max_diff(y, ref) <= 1e-12);
}

TEST_CASE("csr_matvec parallel matches serial") {
  const SparseMatrix a = rectangle_problem(40, 40).ambient();
  const auto x = gaussian_data(a.cols(), 3);
  std::vector<double> y(a.rows()), ref(a.rows());
  kernels::csr_matvec(a.rows(), a.row_ptr().data(), a.col_idx().data(), a.values().data(), x.data(), y.data());
  kernels::serial::csr_matvec(a.rows(), a.row_ptr().data(), a.col_idx().data(), a.values().data(), x.data(),
                              ref.data());
  CHECK(max_diff(y, ref) == 0.0);
}

TEST_CASE("triangular solves parallel match serial") {
  const std::size_t n = 90, nrhs = 17;
  const auto l = lower_factor(n, 4);
  const auto b = gaussian_data(n * nrhs, 5);
  auto x = b, ref = b;
  kernels::trsm_lower(n, nrhs, l.data(), x.data());
  kernels::serial::trsm_lower(n, nrhs, l.data(), ref.data());
  CHECK(max_diff(x, ref) <= 1e-12);
  x = b;
  ref = b;
  kernels::trsm_lower_t(n, nrhs, l.data(), x.data());
  kernels::serial::trsm_lower_t(n, nrhs, l.data(), ref.data());
  CHECK(max_diff(x, ref) <= 1e-12);
}

TEST_CASE("shifted_residual parallel matches serial and is extended precision") {
  const std::size_t n = 70, nrhs = 9;
  const auto s = gaussian_data(n * n, 6);
  const auto x = gaussian_data(n * nrhs, 7);
  const auto rhs = gaussian_data(n * nrhs, 8);
  std::vector<double> r(n * nrhs), ref(n * nrhs);
  kernels::shifted_residual(n, nrhs, s.data(), 0.25, x.data(), rhs.data(), r.data());
  kernels::serial::shifted_residual(n, nrhs, s.data(), 0.25, x.data(), rhs.data(), ref.data());
  CHECK(max_diff(r, ref) == 0.0);

  // (1 + 2⁻³⁰)² needs 61 bits; the right-hand side is its double rounding,
  // so only the dropped 2⁻⁶⁰ tail remains.
  const double big = 1.0 + std::ldexp(1.0, -30);
  const double sm[1] = {big};
  const double xm[1] = {big};
  const double rh[1] = {big * big};
  double out[1];
  kernels::shifted_residual(1, 1, sm, 0.0, xm, rh, out);
  CHECK(out[0] == -std::ldexp(1.0, -60));
}

TEST_CASE("kernels are bitwise deterministic across thread counts") {
  const std::size_t m = 150, n = 140, k = 160;
  const auto a = gaussian_data(m * k, 9);
  const auto b = gaussian_data(k * n, 10);
  auto [one, four] = with_thread_counts([&] {
    std::vector<double> c(m * n);
    kernels::gemm_nn(m, n, k, a.data(), b.data(), c.data());
    return c;
  });
  CHECK(one == four);

  const auto l = lower_factor(m, 11);
  auto [t1, t4] = with_thread_counts([&] {
    std::vector<double> x(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(m * 40));
    kernels::trsm_lower(m, 40, l.data(), x.data());
    return x;
  });
  CHECK(t1 == t4);
}

}  // TEST_SUITE
