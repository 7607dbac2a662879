#pragma once

// Data-parallel inner kernels. Each OpenMP kernel partitions work over
// output columns (or rows) only, so every output entry is produced by one
// thread with a fixed summation order: results are bitwise identical for
// any thread count. The serial:: versions are straightforward reference
// loops kept for tests and benchmarks.

#include <cstddef>
#include <span>

namespace krein::kernels {

/// C(m×n) = A(m×k)·B(k×n), column-major, C overwritten.
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
/// C(m×n) = A(k×m)ᵀ·B(k×n).
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
/// y = A(m×n)·x.
void gemv(std::size_t m, std::size_t n, const double* a, const double* x, double* y);
/// CSR y = A·x.
void csr_matvec(std::size_t rows, const std::size_t* row_ptr, const std::size_t* col_idx,
                const double* values, const double* x, double* y);
/// Solves L·X = B in place for lower-triangular L (n×n) and nrhs columns.
void trsm_lower(std::size_t n, std::size_t nrhs, const double* l, double* b);
/// Solves Lᵀ·X = B in place.
void trsm_lower_t(std::size_t n, std::size_t nrhs, const double* l, double* b);

/// R = RHS − (S + shift·I)·X for S (n×n) and nrhs columns, accumulated in
/// long double. Used for mixed-precision refinement.
void shifted_residual(std::size_t n, std::size_t nrhs, const double* s, double shift, const double* x,
                      const double* rhs, double* r);

/// Caps the OpenMP team size; 0 leaves the runtime default.
void set_max_threads(int threads);
int max_threads();

namespace serial {

void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b,
             double* c);
void gemv(std::size_t m, std::size_t n, const double* a, const double* x, double* y);
void csr_matvec(std::size_t rows, const std::size_t* row_ptr, const std::size_t* col_idx,
                const double* values, const double* x, double* y);
void trsm_lower(std::size_t n, std::size_t nrhs, const double* l, double* b);
void trsm_lower_t(std::size_t n, std::size_t nrhs, const double* l, double* b);
void shifted_residual(std::size_t n, std::size_t nrhs, const double* s, double shift, const double* x,
                      const double* rhs, double* r);

}  // namespace serial

}  // namespace krein::kernels
