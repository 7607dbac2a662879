#include "krein/extension.hpp"

#include <algorithm>
#include <cmath>

#include "krein/eigen.hpp"
#include "krein/error.hpp"
#include "krein/factor.hpp"
#include "krein/kernels.hpp"

namespace krein {

namespace {

void require_condition(const DenseMatrix& x, const Tolerances& tol, const char* what) {
  const double cond = condition_number(x);
  if (!(cond <= tol.condition_cap))
    throw Error(Errc::IllConditionedDecomposition,
                std::string(what) + ": condition number " + std::to_string(cond) + " exceeds cap");
}

// Solves X·Y = R for Y given the right-hand factor: returns R·X⁻¹.
DenseMatrix right_divide(const DenseMatrix& r, const DenseMatrix& x) {
  return linear_solve(x.transpose(), r.transpose()).transpose();
}

}  // namespace

RestrictedOperator::RestrictedOperator(DenseMatrix basis, DenseMatrix image, DenseMatrix compression,
                                       double epsilon, std::string provenance)
    : basis_(std::move(basis)),
      image_(std::move(image)),
      compression_(std::move(compression)),
      epsilon_(epsilon),
      provenance_(std::move(provenance)) {}

RestrictedOperator RestrictedOperator::from_ambient(const DenseMatrix& ambient, const DenseMatrix& domain_basis,
                                                    double epsilon_floor, const Tolerances& tol,
                                                    std::string provenance) {
  if (!ambient.is_square()) throw Error(Errc::NonSquare, "from_ambient: ambient operator is not square");
  if (!all_finite(ambient) || !all_finite(domain_basis))
    throw Error(Errc::InstanceInvalid, "from_ambient: non-finite entries");
  if (max_abs_asymmetry(ambient) > tol.symmetry * std::max(norm_max(ambient), 1e-300))
    throw Error(Errc::AsymmetricAmbient, "from_ambient: ambient operator is not symmetric");
  if (domain_basis.rows() != ambient.rows())
    throw Error(Errc::DimensionMismatch, "from_ambient: domain basis has the wrong row count");
  if (domain_basis.cols() == 0) throw Error(Errc::InvalidShape, "from_ambient: empty domain");

  const auto rc = orthonormal_range_and_complement(domain_basis);
  if (rc.rank < domain_basis.cols())
    throw Error(Errc::RankDeficientDomain, "from_ambient: domain spanning set is rank deficient");

  DenseMatrix e = rc.range;
  DenseMatrix b = symmetrize(ambient) * e;
  const DenseMatrix m = symmetrize(matmul_tn(e, b));
  const double eps = sym_eigvals(m).front();
  if (!(eps > epsilon_floor))
    throw Error(Errc::NotStrictlyPositive, "from_ambient: smallest eigenvalue of the compression is " +
                                               std::to_string(eps));
  return from_parts(std::move(e), std::move(b), eps, tol, std::move(provenance)).with_ambient(symmetrize(ambient));
}

RestrictedOperator RestrictedOperator::with_ambient(DenseMatrix ambient) const {
  if (ambient.rows() != ambient_dim() || ambient.cols() != ambient_dim())
    throw Error(Errc::DimensionMismatch, "with_ambient: ambient operator has the wrong shape");
  const double defect = norm_max(ambient * basis_ - image_);
  if (defect > 1e-10 * std::max(norm_max(image_), 1e-300))
    throw Error(Errc::InstanceInvalid, "with_ambient: A·E does not reproduce B");
  RestrictedOperator copy = *this;
  copy.ambient_ = std::move(ambient);
  return copy;
}

RestrictedOperator RestrictedOperator::from_parts(DenseMatrix basis, DenseMatrix image, double epsilon,
                                                  const Tolerances& tol, std::string provenance) {
  const std::size_t n = basis.rows();
  const std::size_t d = basis.cols();
  if (image.rows() != n || image.cols() != d)
    throw Error(Errc::DimensionMismatch, "RestrictedOperator: E and B differ in shape");
  if (d == 0 || d >= n)
    throw Error(Errc::InvalidShape, "RestrictedOperator: need 1 <= d < n (got n=" + std::to_string(n) +
                                        ", d=" + std::to_string(d) + ")");
  if (!all_finite(basis) || !all_finite(image))
    throw Error(Errc::InstanceInvalid, "RestrictedOperator: non-finite entries");

  DenseMatrix gram = matmul_tn(basis, basis);
  for (std::size_t i = 0; i < d; ++i) gram(i, i) -= 1.0;
  if (norm_max(gram) > tol.orthonormality)
    throw Error(Errc::InstanceInvalid, "RestrictedOperator: domain basis is not orthonormal");

  const DenseMatrix raw = matmul_tn(basis, image);
  const double scale = std::max({norm_max(image), norm_max(raw), 1e-300});
  if (max_abs_asymmetry(raw) > tol.symmetry * scale)
    throw Error(Errc::AsymmetricAmbient, "RestrictedOperator: EᵀB is not symmetric");
  DenseMatrix compression = symmetrize(raw);

  const double lowest = sym_eigvals(compression).front();
  if (!(lowest > 0.0))
    throw Error(Errc::NotStrictlyPositive,
                "RestrictedOperator: smallest eigenvalue of EᵀB is " + std::to_string(lowest));
  if (epsilon < 0.0) {
    epsilon = lowest;
  } else if (!(epsilon > 0.0) || lowest < epsilon - tol.positivity * scale) {
    throw Error(Errc::NotStrictlyPositive, "RestrictedOperator: positivity bound ε is not satisfied");
  }

  return RestrictedOperator(std::move(basis), std::move(image), std::move(compression), epsilon,
                            std::move(provenance));
}

DenseMatrix adjoint_kernel(const RestrictedOperator& op) {
  auto rc = orthonormal_range_and_complement(op.image());
  if (rc.rank != op.domain_dim())
    throw Error(Errc::RankDeficientDomain, "adjoint_kernel: S is not injective to working precision");
  return std::move(rc.complement);
}

DenseMatrix krein_extension(const RestrictedOperator& op, const Tolerances& tol) {
  const DenseMatrix k = adjoint_kernel(op);
  const DenseMatrix split = hcat(op.basis(), k);
  require_condition(split, tol, "krein_extension [E K]");
  const DenseMatrix target = hcat(op.image(), DenseMatrix(op.ambient_dim(), k.cols()));
  return symmetrize(right_divide(target, split));
}

DenseMatrix friedrichs_inverse(const RestrictedOperator& op, const Tolerances& tol) {
  const auto domain = orthonormal_range_and_complement(op.basis());
  const DenseMatrix& n = domain.complement;
  const DenseMatrix split = hcat(op.image(), n);
  require_condition(split, tol, "friedrichs_inverse [B N]");
  const DenseMatrix target = hcat(op.basis(), DenseMatrix(op.ambient_dim(), n.cols()));
  return symmetrize(right_divide(target, split));
}

DenseMatrix friedrichs_resolvent(const RestrictedOperator& op, double a) {
  if (!(a > 0.0)) throw Error(Errc::NonpositiveShift, "friedrichs_resolvent: shift must be positive");
  DenseMatrix shifted = op.compression();
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += a;
  const Cholesky chol(shifted);
  const DenseMatrix coords = chol.solve(op.basis().transpose());  // (M + a)⁻¹Eᵀ
  return symmetrize(op.basis() * coords);
}

ExtensionBundle build_extensions(const RestrictedOperator& op, const Tolerances& tol) {
  const std::size_t n = op.ambient_dim();
  const std::size_t d = op.domain_dim();

  auto range = orthonormal_range_and_complement(op.image());
  if (range.rank != d)
    throw Error(Errc::RankDeficientDomain, "build_extensions: S is not injective to working precision");
  auto domain = orthonormal_range_and_complement(op.basis());

  ExtensionBundle bundle;
  bundle.range_basis = std::move(range.range);
  bundle.adjoint_kernel = std::move(range.complement);
  bundle.domain_complement = std::move(domain.complement);

  const DenseMatrix krein_split = hcat(op.basis(), bundle.adjoint_kernel);
  require_condition(krein_split, tol, "krein_extension [E K]");
  bundle.krein = symmetrize(right_divide(hcat(op.image(), DenseMatrix(n, n - d)), krein_split));

  const DenseMatrix friedrichs_split = hcat(op.image(), bundle.domain_complement);
  require_condition(friedrichs_split, tol, "friedrichs_inverse [B N]");
  bundle.friedrichs_inverse = symmetrize(right_divide(hcat(op.basis(), DenseMatrix(n, n - d)), friedrichs_split));
  return bundle;
}

DenseMatrix reduced_krein_inverse(const RestrictedOperator& /*op*/, const ExtensionBundle& bundle) {
  const DenseMatrix& q = bundle.range_basis;
  return symmetrize(matmul_tn(q, bundle.friedrichs_inverse * q));
}

DomainSplit domain_decompose(const RestrictedOperator& op, const ExtensionBundle& bundle,
                             std::span<const double> v) {
  if (v.size() != op.ambient_dim()) throw Error(Errc::DimensionMismatch, "domain_decompose: vector length");
  DomainSplit out;
  out.domain_part = bundle.friedrichs_inverse * (bundle.krein * v);
  out.kernel_part.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.kernel_part[i] = v[i] - out.domain_part[i];
  return out;
}

MuSequence mu_sequence(const RestrictedOperator& op, const ExtensionBundle& bundle, std::size_t j_max,
                       const Tolerances& tol) {
  const std::size_t d = op.domain_dim();
  if (j_max == 0 || j_max > d)
    throw Error(Errc::JOutOfRange, "mu_sequence: j_max must be in [1, " + std::to_string(d) + "]");

  const Vector friedrichs = sym_eigvals(op.compression());
  const Vector all_krein = sym_eigvals(bundle.krein);

  MuSequence out;
  out.friedrichs.assign(friedrichs.begin(), friedrichs.begin() + static_cast<std::ptrdiff_t>(j_max));
  const auto nonzero = all_krein.end() - static_cast<std::ptrdiff_t>(d);
  out.krein.assign(nonzero, nonzero + static_cast<std::ptrdiff_t>(j_max));

  const double floor = op.epsilon() * (1.0 - tol.mu_ordering);
  out.ordered = true;
  for (std::size_t j = 0; j < j_max; ++j) {
    if (out.friedrichs[j] < floor) out.ordered = false;
    if (out.friedrichs[j] > out.krein[j] * (1.0 + tol.mu_ordering)) out.ordered = false;
  }
  return out;
}

DenseMatrix shifted_inverse(const DenseMatrix& s, double a) {
  const DenseMatrix sym = symmetrize(s);
  DenseMatrix shifted = sym;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += a;
  const Cholesky chol(shifted);
  const std::size_t n = s.rows();
  const DenseMatrix id = DenseMatrix::identity(n);
  DenseMatrix x = chol.solve(id);
  DenseMatrix r(n, n);
  for (int step = 0; step < 1; ++step) {
    kernels::shifted_residual(n, n, sym.data().data(), a, x.data().data(), id.data().data(), r.data().data());
    x += chol.solve(r);
  }
  return symmetrize(x);
}

ResolventBounds resolvent_bounds(const RestrictedOperator& op, const ExtensionBundle& bundle, double a) {
  if (!(a > 0.0)) throw Error(Errc::NonpositiveShift, "resolvent_bounds: shift must be positive");
  ResolventBounds out;
  out.shift = a;
  out.friedrichs = friedrichs_resolvent(op, a);
  out.krein = shifted_inverse(bundle.krein, a);
  return out;
}

ResolventSandwich resolvent_sandwich(const RestrictedOperator& op, const ResolventBounds& bounds,
                                     const DenseMatrix& candidate, const Tolerances& tol) {
  const double a = bounds.shift;
  if (!(a > 0.0)) throw Error(Errc::NonpositiveShift, "resolvent_sandwich: shift must be positive");
  const std::size_t n = op.ambient_dim();
  if (candidate.rows() != n || candidate.cols() != n)
    throw Error(Errc::DimensionMismatch, "resolvent_sandwich: candidate has the wrong shape");
  const double defect = norm_max(candidate * op.basis() - op.image());
  if (defect > tol.extension_property * std::max(norm_max(op.image()), 1e-300))
    throw Error(Errc::NotAnExtension, "resolvent_sandwich: candidate does not extend S");

  const DenseMatrix middle = shifted_inverse(candidate, a);
  ResolventSandwich out;
  out.lower_margin = sym_eigvals(symmetrize(middle - bounds.friedrichs)).front() * a;
  out.upper_margin = sym_eigvals(symmetrize(bounds.krein - middle)).front() * a;
  out.holds = out.lower_margin >= -tol.resolvent_order && out.upper_margin >= -tol.resolvent_order;
  return out;
}

ResolventSandwich resolvent_sandwich(const RestrictedOperator& op, const ExtensionBundle& bundle,
                                     const DenseMatrix& candidate, double a, const Tolerances& tol) {
  return resolvent_sandwich(op, resolvent_bounds(op, bundle, a), candidate, tol);
}

bool extension_order_check(const RestrictedOperator& op, const ExtensionBundle& bundle,
                           const DenseMatrix& candidate, double a, const Tolerances& tol) {
  return resolvent_sandwich(op, bundle, candidate, a, tol).holds;
}

DenseMatrix nonnegative_extension(const ExtensionBundle& bundle, const DenseMatrix& w) {
  const DenseMatrix& n = bundle.domain_complement;
  if (w.rows() != n.cols() || w.cols() != n.cols())
    throw Error(Errc::DimensionMismatch, "nonnegative_extension: W must be (n-d)x(n-d)");
  return symmetrize(bundle.krein + n * (w * n.transpose()));
}

}  // namespace krein
