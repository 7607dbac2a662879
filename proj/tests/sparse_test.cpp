#include <doctest.h>

#include <cmath>

#include "krein/discretize.hpp"
#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/sparse.hpp"

using namespace krein;

TEST_SUITE("sparse") {

TEST_CASE("triplets sum duplicates and drop zeros") {
  const SparseMatrix a = SparseMatrix::from_triplets(3, 3, {{0, 1, 2.0}, {0, 1, 3.0}, {2, 0, 1.0}, {1, 1, 0.0}, {2, 2, -1.0}, {2, 2, 1.0}});
  CHECK(a.nonzeros() == 2);
  CHECK(a.at(0, 1) == 5.0);
  CHECK(a.at(1, 1) == 0.0);
  CHECK(a.transpose().at(1, 0) == 5.0);
  CHECK(a.norm_one() == 5.0);
}

TEST_CASE("sparse products and selection agree with dense") {
  Rng rng(4);
  const DenseMatrix x = rng.gaussian(6, 5);
  const DenseMatrix y = rng.gaussian(5, 4);
  const SparseMatrix sx = SparseMatrix::from_dense(x);
  const SparseMatrix sy = SparseMatrix::from_dense(y);
  CHECK(norm_max((sx * sy).to_dense() - x * y) <= 1e-14);
  CHECK(norm_max(add(2.0, sx, -1.0, sx).to_dense() - x) <= 1e-15);
  const Vector v{1.0, 2.0, 3.0, 4.0, 5.0};
  const Vector dense = x * v;
  const Vector sparse = sx.multiply(v);
  for (std::size_t i = 0; i < 6; ++i) CHECK(sparse[i] == doctest::Approx(dense[i]));
  const SparseMatrix sel = sx.select({4, 1}, {0, 3});
  CHECK(sel.at(0, 1) == x(4, 3));
  CHECK(sel.at(1, 0) == x(1, 0));
}

TEST_CASE("skyline cholesky solves the 2D Laplacian") {
  const SparseMatrix a = rectangle_problem(12, 9).ambient();
  const SkylineCholesky chol(a);
  Vector b(a.rows());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::sin(static_cast<double>(i));
  const Vector x = chol.solve(b);
  const Vector ax = a.multiply(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(ax[i] - b[i]));
  CHECK(worst <= 1e-10);
  CHECK(chol.envelope_size() <= a.rows() * 13);
}

TEST_CASE("skyline cholesky rejects an indefinite matrix") {
  const SparseMatrix a = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 2.0}, {1, 1, 1.0}});
  try {
    SkylineCholesky c(a);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotPositiveDefinite);
  }
}

TEST_CASE("block lanczos matches the dense pencil, including a double eigenvalue") {
  const SparsePencil p = rectangle_problem(9, 9).pencil();
  const Vector dense = gen_eigvals_pd(p.g.to_dense(), p.m.to_dense());
  const PencilEigen it = smallest_pencil_eigs_iterative(p.g, p.m, 4);
  REQUIRE(it.values.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(it.values[j] == doctest::Approx(dense[j]).epsilon(1e-10));
  CHECK(std::abs(it.values[1] - it.values[2]) <= 1e-9 * it.values[1]);
  const DenseMatrix mv = p.m.to_dense() * it.vectors;
  CHECK(norm_max(matmul_tn(it.vectors, mv) - DenseMatrix::identity(4)) <= 1e-9);
  const DenseMatrix g = p.g.to_dense(), m = p.m.to_dense();
  for (std::size_t j = 0; j < 4; ++j) {
    const Vector c = it.vectors.col_vector(j);
    const Vector r = axpby(1.0, g * c, -it.values[j], m * c);
    CHECK(norm2(r) <= 1e-10 * (norm_two(g) + it.values[j] * norm_two(m)) * norm2(c));
  }
}

TEST_CASE("lanczos returns the full spectrum when k equals the dimension") {
  const SparsePencil p = interval_problem(14).pencil();
  const Vector dense = gen_eigvals_pd(p.g.to_dense(), p.m.to_dense());
  const PencilEigen it = smallest_pencil_eigs_iterative(p.g, p.m, dense.size());
  REQUIRE(it.values.size() == dense.size());
  for (std::size_t j = 0; j < dense.size(); ++j) CHECK(it.values[j] == doctest::Approx(dense[j]).epsilon(1e-8));
}

TEST_CASE("lanczos on the clamped column N=50") {
  const SparsePencil p = interval_problem(50).pencil();
  const Vector dense = gen_eigvals_pd(p.g.to_dense(), p.m.to_dense());
  const PencilEigen it = smallest_pencil_eigs_iterative(p.g, p.m, 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(it.values[j] == doctest::Approx(dense[j]).epsilon(1e-8));
}

TEST_CASE("lanczos on the 7x7 plate reproduces the dense oracle") {
  const SparsePencil p = rectangle_problem(7, 7).pencil();
  const PencilEigen it = smallest_pencil_eigs_iterative(p.g, p.m, 3);
  CHECK(it.values[0] == doctest::Approx(66.38424993763384).epsilon(1e-11));
  CHECK(it.values[1] == doctest::Approx(111.352987465509).epsilon(1e-11));
  CHECK(it.values[2] == doctest::Approx(111.352987465509).epsilon(1e-11));
}

}  // TEST_SUITE
