#include "krein/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "krein/convergence.hpp"
#include "krein/error.hpp"
#include "krein/factor.hpp"

namespace krein {

GridSpec GridSpec::interval(std::size_t n) {
  GridSpec g;
  g.dimension = 1;
  g.nx = n;
  g.ny = 1;
  return g;
}

GridSpec GridSpec::rectangle(std::size_t nx, std::size_t ny, double lx, double ly) {
  GridSpec g;
  g.dimension = 2;
  g.nx = nx;
  g.ny = ny;
  g.lx = lx;
  g.ly = ly;
  return g;
}

std::string GridSpec::label() const {
  std::ostringstream os;
  if (dimension == 1) {
    os << "unit interval, N=" << nx;
  } else if (lx == 1.0 && ly == 1.0) {
    os << "unit square, " << nx << "x" << ny;
  } else {
    os << "rectangle " << lx << "x" << ly << ", " << nx << "x" << ny;
  }
  return os.str();
}

void GridSpec::validate() const {
  if (dimension != 1 && dimension != 2) throw Error(Errc::InvalidShape, "GridSpec: dimension must be 1 or 2");
  if (nx < 5 || (dimension == 2 && ny < 5))
    throw Error(Errc::GridTooSmall, "GridSpec: need at least 5 interior nodes per axis");
  if (!(lx > 0.0) || !(ly > 0.0)) throw Error(Errc::InvalidShape, "GridSpec: side lengths must be positive");
}

GridProblem::GridProblem(GridSpec spec, SparseMatrix ambient, std::vector<std::size_t> domain_nodes)
    : spec_(spec), ambient_(std::move(ambient)), domain_nodes_(std::move(domain_nodes)) {}

std::string GridProblem::provenance() const {
  return "minimal Laplacian, " + spec_.label() + ", deep-interior domain (d=" + std::to_string(domain_dim()) + ")";
}

SparseMatrix GridProblem::image() const {
  std::vector<std::size_t> all(ambient_dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return ambient_.select(all, domain_nodes_);
}

SparsePencil GridProblem::pencil() const {
  const SparseMatrix b = image();
  SparsePencil p;
  p.g = b.transpose() * b;
  p.m = ambient_.select(domain_nodes_, domain_nodes_);
  return p;
}

RestrictedOperator GridProblem::restricted(std::size_t max_ambient) const {
  if (ambient_dim() > max_ambient)
    throw Error(Errc::SizeCapExceeded, "grid problem with n=" + std::to_string(ambient_dim()) +
                                           " exceeds the dense cap " + std::to_string(max_ambient));
  DenseMatrix e(ambient_dim(), domain_dim());
  for (std::size_t j = 0; j < domain_dim(); ++j) e(domain_nodes_[j], j) = 1.0;
  return RestrictedOperator::from_parts(std::move(e), image().to_dense(), -1.0, {}, provenance())
      .with_ambient(ambient_.to_dense());
}

GridProblem interval_problem(std::size_t n) {
  const GridSpec spec = GridSpec::interval(n);
  spec.validate();
  const double inv_h2 = 1.0 / (spec.hx() * spec.hx());
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0 * inv_h2});
    if (i > 0) t.push_back({i, i - 1, -inv_h2});
    if (i + 1 < n) t.push_back({i, i + 1, -inv_h2});
  }
  std::vector<std::size_t> domain;
  for (std::size_t i = 1; i + 1 < n; ++i) domain.push_back(i);
  return GridProblem(spec, SparseMatrix::from_triplets(n, n, std::move(t)), std::move(domain));
}

GridProblem rectangle_problem(std::size_t nx, std::size_t ny, double lx, double ly) {
  const GridSpec spec = GridSpec::rectangle(nx, ny, lx, ly);
  spec.validate();
  const double cx = 1.0 / (spec.hx() * spec.hx());
  const double cy = 1.0 / (spec.hy() * spec.hy());
  // Node (i, j) ↦ i + j·nx, x fastest.
  auto id = [nx](std::size_t i, std::size_t j) { return i + j * nx; };
  std::vector<Triplet> t;
  std::vector<std::size_t> domain;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t p = id(i, j);
      t.push_back({p, p, 2.0 * cx + 2.0 * cy});
      if (i > 0) t.push_back({p, id(i - 1, j), -cx});
      if (i + 1 < nx) t.push_back({p, id(i + 1, j), -cx});
      if (j > 0) t.push_back({p, id(i, j - 1), -cy});
      if (j + 1 < ny) t.push_back({p, id(i, j + 1), -cy});
      if (i > 0 && i + 1 < nx && j > 0 && j + 1 < ny) domain.push_back(p);
    }
  const std::size_t n = nx * ny;
  return GridProblem(spec, SparseMatrix::from_triplets(n, n, std::move(t)), std::move(domain));
}

RestrictedOperator interval_minimal_laplacian(std::size_t n) { return interval_problem(n).restricted(); }

RestrictedOperator rectangle_minimal_laplacian(std::size_t nx, std::size_t ny) {
  return rectangle_problem(nx, ny).restricted();
}

Vector grid_pencil_eigenvalues(const GridProblem& problem, std::size_t k, SolveMethod method) {
  if (k == 0 || k > problem.domain_dim())
    throw Error(Errc::JOutOfRange, "grid_pencil_eigenvalues: k must be in [1, d]");
  const SparsePencil p = problem.pencil();
  if (method == SolveMethod::iterative) return smallest_pencil_eigs_iterative(p.g, p.m, k).values;
  Vector all = gen_eigvals_pd(p.g.to_dense(), p.m.to_dense());
  all.resize(k);
  return all;
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // Box–Muller; u1 is kept away from zero.
  const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DenseMatrix Rng::gaussian(std::size_t rows, std::size_t cols) {
  DenseMatrix g(rows, cols);
  for (double& x : g.data()) x = normal();
  return g;
}

DenseMatrix random_orthogonal(std::size_t n, Rng& rng) {
  const auto rc = orthonormal_range_and_complement(rng.gaussian(n, n));
  return hcat(rc.range, rc.complement);
}

RestrictedOperator random_instance(std::size_t n, std::size_t d, double eps, std::uint64_t seed) {
  if (d == 0 || d >= n)
    throw Error(Errc::InvalidShape, "random_instance: need 1 <= d < n (got n=" + std::to_string(n) +
                                        ", d=" + std::to_string(d) + ")");
  if (!(eps > 0.0)) throw Error(Errc::InvalidShape, "random_instance: eps must be positive");
  Rng rng(seed);
  const DenseMatrix v = random_orthogonal(n, rng);
  Vector spectrum(n);
  for (double& s : spectrum) s = eps * std::pow(100.0, rng.uniform());
  DenseMatrix scaled = v;  // ΛV
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= spectrum[i];
  const DenseMatrix a = symmetrize(matmul_tn(v, scaled));  // VᵀΛV
  const DenseMatrix domain = rng.gaussian(n, d);

  std::ostringstream prov;
  prov << "random_instance n=" << n << " d=" << d << " eps=" << eps << " seed=" << seed;
  return RestrictedOperator::from_ambient(a, domain, 0.0, {}, prov.str());
}

DenseMatrix random_psd(std::size_t n, std::size_t rank, double scale, Rng& rng) {
  const DenseMatrix g = rng.gaussian(rank, n);
  return symmetrize((scale / static_cast<double>(std::max<std::size_t>(rank, 1))) * matmul_tn(g, g));
}

ReferenceProblem parse_reference_problem(const std::string& tag) {
  if (tag == "clamped_column_1d") return ReferenceProblem::clamped_column_1d;
  if (tag == "clamped_plate_square") return ReferenceProblem::clamped_plate_square;
  throw Error(Errc::UnknownProblem, "unknown reference problem '" + tag + "'");
}

double clamped_column_characteristic(double k) { return 2.0 * (1.0 - std::cos(k)) - k * std::sin(k); }

namespace {

double bisect(double lo, double hi) {
  double flo = clamped_column_characteristic(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = clamped_column_characteristic(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ContinuumReference clamped_column(std::size_t count) {
  ContinuumReference ref;
  constexpr double step = 0.01;
  constexpr double k_max = 2000.0;
  double lo = 0.5;
  double flo = clamped_column_characteristic(lo);
  while (ref.eigenvalues.size() < count && lo < k_max) {
    const double hi = lo + step;
    const double fhi = clamped_column_characteristic(hi);
    if (fhi == 0.0 || (fhi < 0.0) != (flo < 0.0)) {
      const double k = fhi == 0.0 ? hi : bisect(lo, hi);
      ref.eigenvalues.push_back(k * k);
    }
    lo = hi;
    flo = fhi;
  }
  if (ref.eigenvalues.size() < count)
    throw Error(Errc::RootFindingFailure, "clamped column: fewer roots than requested below k_max");
  ref.provenance =
      "clamped column: lambda_j = k_j^2 for the roots of 2(1 - cos k) - k sin k = 0, bracketed on a 0.01 grid "
      "from k = 0.5 and refined by bisection";
  return ref;
}

ContinuumReference clamped_plate() {
  const std::vector<std::size_t> levels{15, 31, 63};
  const ConvergenceStudy study = convergence_study(GridFamily::square, levels, SolveMethod::iterative);
  ContinuumReference ref;
  ref.eigenvalues = {study.extrapolation.limit};
  ref.uncertainty = study.extrapolation.uncertainty;
  std::ostringstream os;
  os.precision(12);
  os << "clamped plate, unit square: Richardson extrapolation of the discrete lambda_1 over grids";
  for (const auto& lv : study.levels) os << " N=" << lv.n << " (h=" << lv.h << ", lambda_1=" << lv.lambda1 << ")";
  os << "; observed order " << study.extrapolation.order << ", GCI uncertainty " << study.extrapolation.uncertainty;
  ref.provenance = os.str();
  return ref;
}

}  // namespace

ContinuumReference continuum_reference(ReferenceProblem problem, std::size_t count) {
  switch (problem) {
    case ReferenceProblem::clamped_column_1d:
      return clamped_column(count);
    case ReferenceProblem::clamped_plate_square:
      return clamped_plate();
  }
  throw Error(Errc::UnknownProblem, "continuum_reference: unknown problem");
}

}  // namespace krein
