#include <doctest.h>

#include <cmath>

#include "krein/discretize.hpp"
#include "krein/eigen.hpp"
#include "krein/extension.hpp"
#include "support.hpp"

using namespace krein;

namespace {

// A = diag(1, 2, 3) restricted to span(1, 1, 1).
// By hand: E = (1,1,1)/√3, B = (1,2,3)/√3, EᵀB = 2, BᵀB = 14/3.
// SK = (1/6)·(1,2,3)(1,2,3)ᵀ, F = (1/6)·(1,1,1)(1,1,1)ᵀ.
RestrictedOperator three_point() {
  return RestrictedOperator::from_ambient(DenseMatrix::diagonal(Vector{1.0, 2.0, 3.0}),
                                          DenseMatrix::from_rows({{1.0}, {1.0}, {1.0}}));
}

// 2·I on ℝ⁶ restricted to a random 3-dimensional subspace.
RestrictedOperator scaled_identity() {
  Rng rng(99);
  return RestrictedOperator::from_ambient(2.0 * DenseMatrix::identity(6), rng.gaussian(6, 3));
}

}  // namespace

TEST_SUITE("extension") {

TEST_CASE("three-point fixture: extremal extensions by hand") {
  const RestrictedOperator op = three_point();
  CHECK(op.epsilon() == doctest::Approx(2.0).epsilon(1e-14));
  const ExtensionBundle bundle = build_extensions(op);
  const Vector w{1.0, 2.0, 3.0};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(bundle.krein(i, j) - w[i] * w[j] / 6.0) <= 1e-14);
      CHECK(std::abs(bundle.friedrichs_inverse(i, j) - 1.0 / 6.0) <= 1e-14);
    }
  CHECK(bundle.adjoint_kernel.cols() == 2);
  CHECK(bundle.domain_complement.cols() == 2);
  const Vector krein_eigs = sym_eigvals(bundle.krein);
  CHECK(std::abs(krein_eigs[0]) <= 1e-14);
  CHECK(std::abs(krein_eigs[1]) <= 1e-14);
  CHECK(std::abs(krein_eigs[2] - 7.0 / 3.0) <= 1e-12);
  const DenseMatrix reduced = reduced_krein_inverse(op, bundle);
  CHECK(std::abs(reduced(0, 0) - 3.0 / 7.0) <= 1e-12);
}

TEST_CASE("three-point fixture: domain decomposition of e1") {
  const RestrictedOperator op = three_point();
  const ExtensionBundle bundle = build_extensions(op);
  const DomainSplit split = domain_decompose(op, bundle, Vector{1.0, 0.0, 0.0});
  // u = (1,1,1)/6, w = (5, −1, −1)/6.
  CHECK(split.domain_part[0] == doctest::Approx(1.0 / 6.0));
  CHECK(split.domain_part[2] == doctest::Approx(1.0 / 6.0));
  CHECK(split.kernel_part[0] == doctest::Approx(5.0 / 6.0));
  CHECK(split.kernel_part[1] == doctest::Approx(-1.0 / 6.0));
  CHECK_ERRC(domain_decompose(op, bundle, Vector{1.0, 0.0}), Errc::DimensionMismatch);
}

TEST_CASE("three-point fixture: Friedrichs resolvent") {
  const RestrictedOperator op = three_point();
  const DenseMatrix r = friedrichs_resolvent(op, 1.0);
  // E·(2 + 1)⁻¹·Eᵀ = ones/9.
  for (double x : r.data()) CHECK(x == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("scaled identity: every ordering is tight") {
  const RestrictedOperator op = scaled_identity();
  CHECK(op.epsilon() == doctest::Approx(2.0).epsilon(1e-13));
  const ExtensionBundle bundle = build_extensions(op);
  const MuSequence mu = mu_sequence(op, bundle, 3);
  CHECK(mu.ordered);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(mu.friedrichs[j] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(mu.krein[j] == doctest::Approx(2.0).epsilon(1e-13));
  }
  CHECK_ERRC(mu_sequence(op, bundle, 4), Errc::JOutOfRange);
  CHECK_ERRC(mu_sequence(op, bundle, 0), Errc::JOutOfRange);
}

TEST_CASE("construction rejects invalid instances") {
  const DenseMatrix asym = DenseMatrix::from_rows({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  const DenseMatrix e1 = DenseMatrix::from_rows({{1}, {0}, {0}});
  CHECK_ERRC(RestrictedOperator::from_ambient(asym, e1), Errc::AsymmetricAmbient);
  CHECK_ERRC(RestrictedOperator::from_ambient(DenseMatrix(3, 2), e1), Errc::NonSquare);
  CHECK_ERRC(RestrictedOperator::from_ambient(DenseMatrix::identity(3), DenseMatrix::from_rows({{1, 2}, {1, 2}, {0, 0}})),
             Errc::RankDeficientDomain);
  CHECK_ERRC(RestrictedOperator::from_ambient(DenseMatrix::diagonal(Vector{1.0, -1.0, 1.0}),
                                              DenseMatrix::from_rows({{0}, {1}, {0}})),
             Errc::NotStrictlyPositive);
  CHECK_ERRC(RestrictedOperator::from_ambient(DenseMatrix::identity(3), DenseMatrix::from_rows({{1}, {0}})),
             Errc::DimensionMismatch);

  const DenseMatrix e = DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
  CHECK_ERRC(RestrictedOperator::from_parts(e, DenseMatrix::from_rows({{1, 2}, {0, 1}, {0, 0}})),
             Errc::AsymmetricAmbient);
  CHECK_ERRC(RestrictedOperator::from_parts(2.0 * e, DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}})),
             Errc::InstanceInvalid);
  CHECK_ERRC(RestrictedOperator::from_parts(DenseMatrix::identity(2), DenseMatrix::identity(2)), Errc::InvalidShape);
  CHECK_ERRC(RestrictedOperator::from_parts(e, DenseMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}}), 1.5),
             Errc::NotStrictlyPositive);
  const RestrictedOperator ok = RestrictedOperator::from_parts(e, DenseMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}}));
  CHECK_ERRC(ok.with_ambient(DenseMatrix::identity(3)), Errc::InstanceInvalid);
  CHECK_ERRC(ok.with_ambient(DenseMatrix::identity(2)), Errc::DimensionMismatch);
}

TEST_CASE("an ill-conditioned split is refused") {
  // B almost parallel to D^⊥, so both splits are nearly singular.
  const DenseMatrix e = DenseMatrix::from_rows({{1}, {0}});
  const DenseMatrix b = DenseMatrix::from_rows({{1e-10}, {1}});
  const RestrictedOperator op = RestrictedOperator::from_parts(e, b);
  CHECK_ERRC(build_extensions(op), Errc::IllConditionedDecomposition);
}

TEST_CASE("Krein extension: extension property, kernel and Krein's formula") {
  const RestrictedOperator op = random_instance(25, 9, 0.5, 21);
  const ExtensionBundle bundle = build_extensions(op);
  CHECK(norm_max(bundle.krein * op.basis() - op.image()) <= 1e-12 * norm_max(op.image()));
  CHECK(norm_max(bundle.krein * bundle.adjoint_kernel) <= 1e-12 * norm_max(bundle.krein));
  CHECK(norm_max(matmul_tn(op.image(), bundle.adjoint_kernel)) <= 1e-12 * norm_max(op.image()));
  CHECK(norm_max(bundle.friedrichs_inverse * op.image() - op.basis()) <= 1e-12);
  CHECK(norm_max(bundle.friedrichs_inverse * bundle.domain_complement) <= 1e-12);
  CHECK(norm_max(bundle.krein - krein_extension(op)) <= 1e-12 * norm_max(bundle.krein));
  CHECK(norm_max(bundle.friedrichs_inverse - friedrichs_inverse(op)) <= 1e-12 * norm_max(bundle.friedrichs_inverse));

  const DenseMatrix& q = bundle.range_basis;
  const DenseMatrix qskq = symmetrize(matmul_tn(q, bundle.krein * q));
  const DenseMatrix product = reduced_krein_inverse(op, bundle) * qskq;
  CHECK(norm_max(product - DenseMatrix::identity(9)) <= 1e-10);
}

TEST_CASE("Friedrichs resolvent is the limit of large extensions") {
  const RestrictedOperator op = random_instance(12, 5, 1.0, 8);
  const ExtensionBundle bundle = build_extensions(op);
  const std::size_t m = 12 - 5;
  const DenseMatrix huge = nonnegative_extension(bundle, 1e8 * DenseMatrix::identity(m));
  const DenseMatrix diff = shifted_inverse(huge, 1.0) - friedrichs_resolvent(op, 1.0);
  CHECK(norm_max(diff) <= 1e-7);
}

TEST_CASE("resolvent sandwich for the extremal and ambient extensions") {
  const RestrictedOperator op = random_instance(20, 8, 0.5, 3);
  const ExtensionBundle bundle = build_extensions(op);
  for (double a : {0.1, 1.0, 10.0}) {
    const ResolventSandwich k = resolvent_sandwich(op, bundle, bundle.krein, a);
    CHECK(k.holds);
    CHECK(std::abs(k.upper_margin) <= 1e-10);
    CHECK(extension_order_check(op, bundle, *op.ambient(), a));
  }
  CHECK_ERRC(resolvent_sandwich(op, bundle, bundle.krein, 0.0), Errc::NonpositiveShift);
  CHECK_ERRC(resolvent_sandwich(op, bundle, DenseMatrix::identity(20), 1.0), Errc::NotAnExtension);
  CHECK_ERRC(nonnegative_extension(bundle, DenseMatrix::identity(3)), Errc::DimensionMismatch);
}

TEST_CASE("shifted_inverse is accurate to working precision") {
  const RestrictedOperator op = random_instance(30, 10, 0.5, 4);
  const ExtensionBundle bundle = build_extensions(op);
  const DenseMatrix x = shifted_inverse(bundle.krein, 0.1);
  DenseMatrix shifted = bundle.krein;
  for (std::size_t i = 0; i < 30; ++i) shifted(i, i) += 0.1;
  CHECK(norm_max(shifted * x - DenseMatrix::identity(30)) <= 1e-13);
}

}  // TEST_SUITE
