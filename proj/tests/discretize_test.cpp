#include <doctest.h>

#include <cmath>
#include <numbers>

#include "krein/convergence.hpp"
#include "krein/discretize.hpp"
#include "support.hpp"

using namespace krein;

TEST_SUITE("discretize") {

TEST_CASE("grid specs") {
  const GridSpec g = GridSpec::interval(9);
  CHECK(g.hx() == doctest::Approx(0.1));
  CHECK(g.weight() == doctest::Approx(0.1));
  CHECK(g.label() == "unit interval, N=9");
  const GridSpec r = GridSpec::rectangle(7, 9, 2.0, 1.0);
  CHECK(r.nodes() == 63);
  CHECK(r.hx() == doctest::Approx(0.25));
  CHECK(r.weight() == doctest::Approx(0.025));
  CHECK_ERRC(GridSpec::interval(4).validate(), Errc::GridTooSmall);
  CHECK_ERRC(GridSpec::rectangle(7, 4).validate(), Errc::GridTooSmall);
  CHECK_ERRC(GridSpec::rectangle(7, 7, -1.0).validate(), Errc::InvalidShape);
  CHECK_ERRC(interval_problem(3), Errc::GridTooSmall);
}

TEST_CASE("interval problem assembles the scaled second difference") {
  const GridProblem p = interval_problem(9);
  CHECK(p.ambient_dim() == 9);
  CHECK(p.domain_dim() == 7);
  CHECK(p.ambient().at(0, 0) == doctest::Approx(200.0));
  CHECK(p.ambient().at(0, 1) == doctest::Approx(-100.0));
  CHECK(p.domain_nodes().front() == 1);
  CHECK(p.domain_nodes().back() == 7);
  const RestrictedOperator op = p.restricted();
  CHECK(op.ambient());
  CHECK(op.deficiency() == 2);
}

TEST_CASE("rectangle problem keeps deep-interior nodes") {
  const GridProblem p = rectangle_problem(7, 6);
  CHECK(p.ambient_dim() == 42);
  CHECK(p.domain_dim() == 5 * 4);
  CHECK(p.ambient().max_abs_asymmetry() == 0.0);
  const SparseMatrix b = p.image();
  CHECK(b.rows() == 42);
  CHECK(b.cols() == 20);
  CHECK_ERRC(rectangle_problem(40, 40).restricted(1000), Errc::SizeCapExceeded);
}

TEST_CASE("grid pencil: dense and iterative paths agree") {
  const GridProblem p = rectangle_problem(11, 11);
  const Vector dense = grid_pencil_eigenvalues(p, 3, SolveMethod::dense);
  const Vector iter = grid_pencil_eigenvalues(p, 3, SolveMethod::iterative);
  for (std::size_t j = 0; j < 3; ++j) CHECK(iter[j] == doctest::Approx(dense[j]).epsilon(1e-10));
  CHECK_ERRC(grid_pencil_eigenvalues(p, 0, SolveMethod::dense), Errc::JOutOfRange);
  CHECK_ERRC(grid_pencil_eigenvalues(p, 82, SolveMethod::dense), Errc::JOutOfRange);
}

TEST_CASE("plate oracle values") {
  CHECK(grid_pencil_eigenvalues(rectangle_problem(15, 15), 1, SolveMethod::iterative)[0] ==
        doctest::Approx(59.17805126856478).epsilon(1e-11));
}

TEST_CASE("clamped column continuum reference") {
  const ContinuumReference ref = continuum_reference(ReferenceProblem::clamped_column_1d, 4);
  REQUIRE(ref.eigenvalues.size() == 4);
  const double pi = std::numbers::pi;
  CHECK(ref.eigenvalues[0] == doctest::Approx(4.0 * pi * pi).epsilon(1e-12));
  CHECK(ref.eigenvalues[1] == doctest::Approx(80.7629142257065).epsilon(1e-12));
  CHECK(ref.eigenvalues[2] == doctest::Approx(16.0 * pi * pi).epsilon(1e-12));
  CHECK(ref.eigenvalues[3] == doctest::Approx(238.718063776438).epsilon(1e-12));
  for (double l : ref.eigenvalues) CHECK(std::abs(clamped_column_characteristic(std::sqrt(l))) <= 1e-10);
  CHECK(!ref.provenance.empty());
  CHECK(parse_reference_problem("clamped_plate_square") == ReferenceProblem::clamped_plate_square);
  CHECK_ERRC(parse_reference_problem("membrane"), Errc::UnknownProblem);
}

TEST_CASE("richardson recovers an exact power law") {
  const std::vector<double> h{0.4, 0.2, 0.1};
  std::vector<double> v;
  for (double x : h) v.push_back(3.0 + 2.0 * x * x);
  const Richardson r = richardson_extrapolate(h, v);
  CHECK(r.order == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.limit == doctest::Approx(3.0).epsilon(1e-12));
  // Non-uniform ratios.
  const std::vector<double> h2{0.3, 0.2, 0.05};
  std::vector<double> v2;
  for (double x : h2) v2.push_back(1.0 - 0.5 * std::pow(x, 1.5));
  const Richardson r2 = richardson_extrapolate(h2, v2);
  CHECK(r2.order == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(r2.limit == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_ERRC(richardson_extrapolate({0.2, 0.1}, {1.0, 2.0}), Errc::InsufficientLevels);
  CHECK_ERRC(richardson_extrapolate({0.1, 0.2, 0.3}, {1.0, 2.0, 3.0}), Errc::InvalidShape);
  CHECK_ERRC(richardson_extrapolate({0.3, 0.2, 0.1}, {1.0, 2.0, 1.5}), Errc::ConvergenceFailure);
}

TEST_CASE("convergence study on the interval") {
  const ConvergenceStudy s = convergence_study(GridFamily::interval, {50, 100, 200, 400});
  CHECK(s.monotone);
  CHECK(s.levels.size() == 4);
  CHECK(s.levels[3].lambda1 == doctest::Approx(39.6752).epsilon(1e-5));
  CHECK(s.extrapolation.order == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::abs(s.extrapolation.limit / (4.0 * std::numbers::pi * std::numbers::pi) - 1.0) <= 2e-3);
  CHECK_ERRC(convergence_study(GridFamily::square, {15, 31}), Errc::InsufficientLevels);
  CHECK(parse_grid_family("2d") == GridFamily::square);
  CHECK_ERRC(parse_grid_family("3d"), Errc::UnknownProblem);
}

TEST_CASE("random instances are deterministic and validated") {
  const RestrictedOperator a = random_instance(15, 6, 0.5, 42);
  const RestrictedOperator b = random_instance(15, 6, 0.5, 42);
  CHECK(a.image() == b.image());
  CHECK(a.basis() == b.basis());
  CHECK(a.epsilon() >= 0.5 - 1e-12);
  CHECK(!(random_instance(15, 6, 0.5, 43).image() == a.image()));
  CHECK_ERRC(random_instance(5, 5, 0.5, 1), Errc::InvalidShape);
  CHECK_ERRC(random_instance(5, 0, 0.5, 1), Errc::InvalidShape);
  CHECK_ERRC(random_instance(5, 2, 0.0, 1), Errc::InvalidShape);
}

TEST_CASE("rng streams are fixed") {
  Rng rng(1);
  const double u = rng.uniform();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  Rng again(1);
  CHECK(again.uniform() == u);
  Rng g(2);
  const DenseMatrix q = random_orthogonal(6, g);
  CHECK(norm_max(matmul_tn(q, q) - DenseMatrix::identity(6)) <= 1e-14);
  const DenseMatrix p = random_psd(5, 2, 3.0, g);
  const Vector ev = sym_eigvals(p);
  CHECK(ev[0] >= -1e-14);
  CHECK(std::abs(ev[2]) <= 1e-13 * ev[4]);
}

}  // TEST_SUITE
