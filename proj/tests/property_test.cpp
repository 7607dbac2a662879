#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "krein/buckling.hpp"
#include "krein/discretize.hpp"
#include "krein/eigen.hpp"
#include "krein/extension.hpp"
#include "krein/factor.hpp"

using namespace krein;

namespace {

struct Case {
  std::size_t n;
  std::size_t d;
  double eps;
  std::uint64_t seed;
};

Case draw_case(std::uint64_t seed) {
  Rng rng(seed * 7919 + 1);
  Case c;
  c.n = 4 + static_cast<std::size_t>(rng.uniform() * 37.0);
  c.d = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(c.n - 1));
  c.eps = std::pow(10.0, -1.0 + 2.0 * rng.uniform());
  c.seed = seed;
  return c;
}

constexpr std::uint64_t kSeeds = 100;

}  // namespace

TEST_SUITE("property") {

TEST_CASE("extremal extensions satisfy their defining identities") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    const Case c = draw_case(s);
    CAPTURE(c.n);
    CAPTURE(c.d);
    CAPTURE(c.seed);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const ExtensionBundle bundle = build_extensions(op);
    const double b_scale = norm_max(op.image());
    const double f_scale = norm_max(bundle.friedrichs_inverse);
    CHECK(norm_max(bundle.krein * op.basis() - op.image()) <= 1e-10 * b_scale);
    CHECK(norm_max(bundle.krein * bundle.adjoint_kernel) <= 1e-10 * b_scale);
    CHECK(bundle.adjoint_kernel.cols() == c.n - c.d);

    const Vector sk = sym_eigvals(bundle.krein);
    CHECK(sk.front() >= -1e-10 * sk.back());
    const Vector f = sym_eigvals(bundle.friedrichs_inverse);
    CHECK(f.front() >= -1e-10 * f.back());

    const DenseMatrix& q = bundle.range_basis;
    const DenseMatrix qskq = symmetrize(matmul_tn(q, bundle.krein * q));
    const DenseMatrix inv = linear_solve(qskq, DenseMatrix::identity(c.d));
    CHECK(norm_max(reduced_krein_inverse(op, bundle) - inv) <= 1e-9 * f_scale);
  }
}

TEST_CASE("spectral identity, ordering and the T bound") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    const Case c = draw_case(s);
    CAPTURE(c.seed);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const ExtensionBundle bundle = build_extensions(op);
    const Vector pencil = buckling_pencil_eigs(op).values;
    const MuSequence mu = mu_sequence(op, bundle, c.d);
    CHECK(mu.ordered);
    for (std::size_t j = 0; j < c.d; ++j) {
      CHECK(std::abs(pencil[j] - mu.krein[j]) <= 1e-9 * mu.krein[j]);
      CHECK(mu.friedrichs[j] >= op.epsilon() * (1.0 - 1e-12));
      CHECK(mu.friedrichs[j] <= mu.krein[j] * (1.0 + 1e-9));
    }
    const BucklingReport r = verify_unitary_equivalence(op, bundle);
    CHECK(r.t_norm <= r.epsilon_inv + 1e-9);
    CHECK(r.reciprocal_residual <= 1e-9);
  }
}

TEST_CASE("the a-form dominates epsilon times the b-form") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    const Case c = draw_case(s);
    CAPTURE(c.seed);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const GramPair gp = gram_pair(op);
    const double lowest = sym_eigvals(symmetrize(gp.a_form - op.epsilon() * gp.b_form)).front();
    CHECK(lowest >= -1e-10 * norm_two(gp.a_form));
  }
}

TEST_CASE("every randomized nonnegative extension sits between the extremal ones") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    const Case c = draw_case(s);
    CAPTURE(c.seed);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const ExtensionBundle bundle = build_extensions(op);
    Rng rng(c.seed + 1000);
    const std::size_t m = c.n - c.d;
    const ResolventBounds bounds = resolvent_bounds(op, bundle, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      const std::size_t rank = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(m));
      const DenseMatrix w = random_psd(m, std::min(rank, m), norm_max(op.compression()), rng);
      const DenseMatrix candidate = nonnegative_extension(bundle, w);
      CHECK(norm_max(candidate * op.basis() - op.image()) <= 1e-10 * norm_max(op.image()));
      const ResolventSandwich sw = resolvent_sandwich(op, bounds, candidate);
      CHECK(sw.lower_margin >= -1e-9);
      CHECK(sw.upper_margin >= -1e-9);
    }
    CHECK(resolvent_sandwich(op, bounds, *op.ambient()).holds);
  }
}

TEST_CASE("domain decomposition splits every vector") {
  for (std::uint64_t s = 1; s <= kSeeds; ++s) {
    const Case c = draw_case(s);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const ExtensionBundle bundle = build_extensions(op);
    Rng rng(c.seed + 2000);
    const DenseMatrix v = rng.gaussian(c.n, 1);
    const DomainSplit split = domain_decompose(op, bundle, v.col(0));
    const Vector coords = matvec_t(op.basis(), split.domain_part);
    CHECK(norm2(axpby(1.0, split.domain_part, -1.0, op.basis() * coords)) <= 1e-10 * norm2(v.col(0)));
    CHECK(norm2(matvec_t(op.image(), split.kernel_part)) <= 1e-10 * norm_two(op.image()) * norm2(v.col(0)));
  }
}

TEST_CASE("scaling the operator scales the spectrum") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Case c = draw_case(s);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    const RestrictedOperator scaled = RestrictedOperator::from_parts(op.basis(), 3.0 * op.image());
    const Vector a = buckling_pencil_eigs(op).values;
    const Vector b = buckling_pencil_eigs(scaled).values;
    for (std::size_t j = 0; j < c.d; ++j) CHECK(b[j] == doctest::Approx(3.0 * a[j]).epsilon(1e-11));
  }
}

TEST_CASE("basis rotation does not change the spectrum") {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const Case c = draw_case(s);
    const RestrictedOperator op = random_instance(c.n, c.d, c.eps, c.seed);
    Rng rng(s);
    const DenseMatrix r = random_orthogonal(c.d, rng);
    const RestrictedOperator rotated = RestrictedOperator::from_parts(op.basis() * r, op.image() * r);
    const Vector a = buckling_pencil_eigs(op).values;
    const Vector b = buckling_pencil_eigs(rotated).values;
    for (std::size_t j = 0; j < c.d; ++j) CHECK(b[j] == doctest::Approx(a[j]).epsilon(1e-11));
    CHECK(norm_max(build_extensions(rotated).krein - build_extensions(op).krein) <= 1e-10 * norm_max(op.image()));
  }
}

}  // TEST_SUITE
