#include <doctest.h>

#include <cmath>

#include "krein/buckling.hpp"
#include "krein/discretize.hpp"
#include "support.hpp"

using namespace krein;

namespace {

RestrictedOperator three_point() {
  return RestrictedOperator::from_ambient(DenseMatrix::diagonal(Vector{1.0, 2.0, 3.0}),
                                          DenseMatrix::from_rows({{1.0}, {1.0}, {1.0}}));
}

}  // namespace

TEST_SUITE("buckling") {

TEST_CASE("three-point fixture: pencil and buckling operator by hand") {
  // G = 14/3, M = 2: λ = 7/3, T = 3/7, 1/ε = 1/2.
  const RestrictedOperator op = three_point();
  const GramPair gp = gram_pair(op);
  CHECK(gp.a_form(0, 0) == doctest::Approx(14.0 / 3.0));
  CHECK(gp.b_form(0, 0) == doctest::Approx(2.0));
  CHECK(std::abs(buckling_pencil_eigs(op).values[0] - 7.0 / 3.0) <= 1e-12);
  const BucklingOperator t = buckling_operator(op);
  CHECK(std::abs(t.matrix(0, 0) - 3.0 / 7.0) <= 1e-12);
  CHECK(std::abs(t.w_norm - 3.0 / 7.0) <= 1e-12);
  const BucklingReport r = verify_unitary_equivalence(op, build_extensions(op));
  CHECK(r.epsilon_inv == doctest::Approx(0.5));
  CHECK(r.t_norm <= r.epsilon_inv);
}

TEST_CASE("scaled identity attains the T bound") {
  Rng rng(99);
  const RestrictedOperator op =
      RestrictedOperator::from_ambient(2.0 * DenseMatrix::identity(6), rng.gaussian(6, 3));
  const BucklingReport r = verify_unitary_equivalence(op, build_extensions(op));
  CHECK(std::abs(r.t_norm - 0.5) <= 1e-12);
  CHECK(std::abs(r.t_norm - r.epsilon_inv) <= 1e-12);
  for (double l : r.lambdas) CHECK(l == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("clamped column N=6 pencil eigenvalues") {
  // Dense reference computed independently from the 4×4 pencil.
  const Vector expected{49.0, 92.29075819, 147.0, 182.10924181};
  const PencilEigen p = buckling_pencil_eigs(interval_minimal_laplacian(6));
  REQUIRE(p.values.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(p.values[j] == doctest::Approx(expected[j]).epsilon(1e-9));
}

TEST_CASE("clamped column N=50 leading eigenvalues") {
  const Vector expected{41.01932376, 83.82207981, 163.43039581};
  const PencilEigen p = buckling_pencil_eigs(interval_minimal_laplacian(50));
  for (std::size_t j = 0; j < 3; ++j) CHECK(p.values[j] == doctest::Approx(expected[j]).epsilon(1e-9));
}

TEST_CASE("unitary equivalence residuals on a random instance") {
  const RestrictedOperator op = random_instance(30, 12, 0.5, 5);
  const ExtensionBundle bundle = build_extensions(op);
  const BucklingReport r = verify_unitary_equivalence(op, bundle);
  CHECK(r.similarity_residual <= 1e-9);
  CHECK(r.polar_residual <= 1e-9);
  CHECK(r.hat_s_isometry_residual <= 1e-10);
  CHECK(r.polar_unitarity_residual <= 1e-10);
  CHECK(r.reciprocal_residual <= 1e-9);
  CHECK(r.t_norm <= r.epsilon_inv + 1e-9);
  const DenseMatrix s = hat_s(op, bundle);
  const GramPair gp = gram_pair(op);
  CHECK(norm_max(matmul_tn(s, s) - gp.a_form) <= 1e-12 * norm_max(gp.a_form));
}

TEST_CASE("pencil and Krein eigenvectors correspond both ways") {
  const RestrictedOperator op = random_instance(20, 7, 0.5, 12);
  const ExtensionBundle bundle = build_extensions(op);
  const PencilEigen p = buckling_pencil_eigs(op);
  for (std::size_t j = 0; j < 7; ++j) {
    const Vector c = p.vectors.col_vector(j);
    const Vector v = pencil_to_krein(op, p.values[j], c);
    const Vector skv = bundle.krein * v;
    CHECK(norm2(axpby(1.0, skv, -p.values[j], v)) <= 1e-9 * p.values[j] * norm2(v));
    const PencilPair back = krein_to_pencil(op, bundle, v);
    CHECK(back.lambda == doctest::Approx(p.values[j]).epsilon(1e-10));
    CHECK(norm2(axpby(1.0, back.coords, -1.0, c)) <= 1e-9 * norm2(c));
    CHECK(norm2(axpby(1.0, back.domain_vector, -1.0, op.basis() * c)) <= 1e-9 * norm2(c));
  }
}

TEST_CASE("correspondence maps reject bad input") {
  const RestrictedOperator op = random_instance(10, 4, 0.5, 2);
  const ExtensionBundle bundle = build_extensions(op);
  const PencilEigen p = buckling_pencil_eigs(op);
  const Vector c = p.vectors.col_vector(0);
  CHECK_ERRC(pencil_to_krein(op, p.values[0] * 1.1, c), Errc::NotAnEigenpair);
  CHECK_ERRC(pencil_to_krein(op, 0.0, c), Errc::ZeroEigenvalue);
  CHECK_ERRC(krein_to_pencil(op, bundle, bundle.adjoint_kernel.col_vector(0)), Errc::ZeroEigenvalue);
  Vector mixed = pencil_to_krein(op, p.values[0], c);
  const Vector other = pencil_to_krein(op, p.values[3], p.vectors.col_vector(3));
  for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] += other[i];
  CHECK_ERRC(krein_to_pencil(op, bundle, mixed), Errc::NotAnEigenpair);
}

}  // TEST_SUITE
