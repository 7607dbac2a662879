#include "krein/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace krein::kernels {

namespace {

// Below this much work the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelFlops = 1u << 15;

using Index = std::int64_t;

}  // namespace

void shifted_residual(std::size_t n, std::size_t nrhs, const double* s, double shift, const double* x,
                      const double* rhs, double* r) {
#pragma omp parallel for schedule(static) if (n * n * nrhs > kParallelFlops)
  for (Index jj = 0; jj < static_cast<Index>(nrhs); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    const double* xj = x + j * n;
    std::vector<long double> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = static_cast<long double>(rhs[i + j * n]) -
                                                  static_cast<long double>(shift) * xj[i];
    for (std::size_t p = 0; p < n; ++p) {
      const long double xp = xj[p];
      const double* sp = s + p * n;
      for (std::size_t i = 0; i < n; ++i) acc[i] -= sp[i] * xp;
    }
    for (std::size_t i = 0; i < n; ++i) r[i + j * n] = static_cast<double>(acc[i]);
  }
}

void set_max_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c) {
  const Index blocks = static_cast<Index>((n + 3) / 4);
  // Four output columns per task so each column of A is streamed once per block.
#pragma omp parallel for schedule(static) if (m * n * k > kParallelFlops)
  for (Index blk = 0; blk < blocks; ++blk) {
    const std::size_t j0 = static_cast<std::size_t>(blk) * 4;
    const std::size_t jn = std::min<std::size_t>(4, n - j0);
    double* cj = c + j0 * m;
    std::fill(cj, cj + jn * m, 0.0);
    for (std::size_t p = 0; p < k; ++p) {
      const double* ap = a + p * m;
      if (jn == 4) {
        const double b0 = b[p + (j0 + 0) * k];
        const double b1 = b[p + (j0 + 1) * k];
        const double b2 = b[p + (j0 + 2) * k];
        const double b3 = b[p + (j0 + 3) * k];
        double* c0 = cj;
        double* c1 = cj + m;
        double* c2 = cj + 2 * m;
        double* c3 = cj + 3 * m;
        for (std::size_t i = 0; i < m; ++i) {
          const double av = ap[i];
          c0[i] += av * b0;
          c1[i] += av * b1;
          c2[i] += av * b2;
          c3[i] += av * b3;
        }
      } else {
        for (std::size_t jj = 0; jj < jn; ++jj) {
          const double bv = b[p + (j0 + jj) * k];
          double* cc = cj + jj * m;
          for (std::size_t i = 0; i < m; ++i) cc[i] += ap[i] * bv;
        }
      }
    }
  }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c) {
#pragma omp parallel for schedule(static) if (m * n * k > kParallelFlops)
  for (Index jj = 0; jj < static_cast<Index>(n); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    const double* bj = b + j * k;
    for (std::size_t i = 0; i < m; ++i) {
      const double* ai = a + i * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      c[i + j * m] = s;
    }
  }
}

void gemv(std::size_t m, std::size_t n, const double* a, const double* x, double* y) {
  // Row-parallel with a private accumulation per row keeps the order fixed.
#pragma omp parallel for schedule(static) if (m * n > kParallelFlops)
  for (Index ii = 0; ii < static_cast<Index>(m); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[i + j * m] * x[j];
    y[i] = s;
  }
}

void csr_matvec(std::size_t rows, const std::size_t* row_ptr, const std::size_t* col_idx,
                const double* values, const double* x, double* y) {
#pragma omp parallel for schedule(static) if (row_ptr[rows] > kParallelFlops)
  for (Index ii = 0; ii < static_cast<Index>(rows); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
}

void trsm_lower(std::size_t n, std::size_t nrhs, const double* l, double* b) {
#pragma omp parallel for schedule(static) if (n * n * nrhs > kParallelFlops)
  for (Index jj = 0; jj < static_cast<Index>(nrhs); ++jj) {
    double* x = b + static_cast<std::size_t>(jj) * n;
    for (std::size_t p = 0; p < n; ++p) {
      const double* lp = l + p * n;
      x[p] /= lp[p];
      const double xp = x[p];
      for (std::size_t i = p + 1; i < n; ++i) x[i] -= lp[i] * xp;
    }
  }
}

void trsm_lower_t(std::size_t n, std::size_t nrhs, const double* l, double* b) {
#pragma omp parallel for schedule(static) if (n * n * nrhs > kParallelFlops)
  for (Index jj = 0; jj < static_cast<Index>(nrhs); ++jj) {
    double* x = b + static_cast<std::size_t>(jj) * n;
    for (std::size_t pp = n; pp-- > 0;) {
      const double* lp = l + pp * n;
      double s = x[pp];
      for (std::size_t i = pp + 1; i < n; ++i) s -= lp[i] * x[i];
      x[pp] = s / lp[pp];
    }
  }
}

namespace serial {

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c) {
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a[i + p * m] * b[p + j * k];
      c[i + j * m] = s;
    }
}

void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c) {
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a[p + i * k] * b[p + j * k];
      c[i + j * m] = s;
    }
}

void gemv(std::size_t m, std::size_t n, const double* a, const double* x, double* y) {
  std::fill(y, y + m, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) y[i] += a[i + j * m] * x[j];
}

void csr_matvec(std::size_t rows, const std::size_t* row_ptr, const std::size_t* col_idx,
                const double* values, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += values[p] * x[col_idx[p]];
    y[i] = s;
  }
}

void trsm_lower(std::size_t n, std::size_t nrhs, const double* l, double* b) {
  for (std::size_t j = 0; j < nrhs; ++j) {
    double* x = b + j * n;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t p = 0; p < i; ++p) s -= l[i + p * n] * x[p];
      x[i] = s / l[i + i * n];
    }
  }
}

void trsm_lower_t(std::size_t n, std::size_t nrhs, const double* l, double* b) {
  for (std::size_t j = 0; j < nrhs; ++j) {
    double* x = b + j * n;
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t p = ii + 1; p < n; ++p) s -= l[p + ii * n] * x[p];
      x[ii] = s / l[ii + ii * n];
    }
  }
}

void shifted_residual(std::size_t n, std::size_t nrhs, const double* s, double shift, const double* x,
                      const double* rhs, double* r) {
  for (std::size_t j = 0; j < nrhs; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      long double acc = static_cast<long double>(rhs[i + j * n]) - static_cast<long double>(shift) * x[i + j * n];
      for (std::size_t p = 0; p < n; ++p) acc -= static_cast<long double>(s[i + p * n]) * x[p + j * n];
      r[i + j * n] = static_cast<double>(acc);
    }
  }
}

}  // namespace serial

}  // namespace krein::kernels
