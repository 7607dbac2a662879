#include "krein/buckling.hpp"

#include <algorithm>
#include <cmath>

#include "krein/error.hpp"
#include "krein/factor.hpp"

namespace krein {

namespace {

double safe(double x) { return std::max(x, 1e-300); }

// T and G^{-1/2}MG^{-1/2} from Ŝ, without forming G: G = ŜᵀŜ gives
// T = Ŝ⁻¹Ŝ⁻ᵀM, and with the polar factors Ŝ = Û·H, G^{1/2} = H.
struct Reduced {
  DenseMatrix t;
  DenseMatrix polar_unitary;
  DenseMatrix middle;
};

Reduced reduce(const DenseMatrix& hat, const DenseMatrix& m) {
  Reduced r;
  r.t = linear_solve(hat, linear_solve(hat.transpose(), m));
  const PolarDecomposition pd = polar_decomposition(hat);
  r.polar_unitary = pd.unitary;
  const DenseMatrix h_inv = symmetrize(linear_solve(pd.positive, DenseMatrix::identity(m.rows())));
  r.middle = symmetrize(h_inv * m * h_inv);
  return r;
}

}  // namespace

GramPair gram_pair(const RestrictedOperator& op) {
  GramPair gp;
  gp.a_form = symmetrize(matmul_tn(op.image(), op.image()));
  gp.b_form = op.compression();
  return gp;
}

BucklingOperator buckling_operator(const RestrictedOperator& op) {
  const DenseMatrix q = orthonormal_range_and_complement(op.image()).range;
  const Reduced r = reduce(matmul_tn(q, op.image()), op.compression());
  BucklingOperator out;
  out.matrix = r.t;
  out.w_norm = sym_eigvals(r.middle).back();
  return out;
}

PencilEigen buckling_pencil_eigs(const RestrictedOperator& op) {
  return gram_pencil_eig(op.image(), op.compression());
}

DenseMatrix hat_s(const RestrictedOperator& op, const ExtensionBundle& bundle) {
  return matmul_tn(bundle.range_basis, op.image());
}

BucklingReport verify_unitary_equivalence(const RestrictedOperator& op, const ExtensionBundle& bundle) {
  const std::size_t d = op.domain_dim();
  const GramPair gp = gram_pair(op);
  const DenseMatrix& g = gp.a_form;
  const DenseMatrix& m = gp.b_form;

  BucklingReport r;
  r.provenance = op.provenance();
  r.hat_s = hat_s(op, bundle);
  const Reduced red = reduce(r.hat_s, m);
  r.t_matrix = red.t;
  r.polar_unitary = red.polar_unitary;
  const DenseMatrix& middle = red.middle;

  const DenseMatrix reduced = reduced_krein_inverse(op, bundle);
  const double f_scale = safe(norm_max(bundle.friedrichs_inverse));

  // Ŝ·T·Ŝ⁻¹ = (Ŝ·T)·Ŝ⁻¹, formed by solving with Ŝᵀ.
  const DenseMatrix st = r.hat_s * r.t_matrix;
  const DenseMatrix similar = linear_solve(r.hat_s.transpose(), st.transpose()).transpose();
  r.similarity_residual = norm_max(reduced - similar) / f_scale;

  const DenseMatrix polar = r.polar_unitary * middle * r.polar_unitary.transpose();
  r.polar_residual = norm_max(reduced - polar) / f_scale;

  r.hat_s_isometry_residual = norm_max(matmul_tn(r.hat_s, r.hat_s) - g) / safe(norm_max(g));
  r.polar_unitarity_residual = norm_max(matmul_tn(r.polar_unitary, r.polar_unitary) - DenseMatrix::identity(d));

  r.t_eigenvalues = sym_eigvals(middle);
  r.t_norm = r.t_eigenvalues.back();
  r.epsilon_inv = 1.0 / op.epsilon();
  r.lambdas = buckling_pencil_eigs(op).values;

  // μ_T ascending pairs with λ descending.
  for (std::size_t j = 0; j < d; ++j)
    r.reciprocal_residual =
        std::max(r.reciprocal_residual, std::abs(r.t_eigenvalues[d - 1 - j] * r.lambdas[j] - 1.0));
  return r;
}

Vector pencil_to_krein(const RestrictedOperator& op, double lambda, std::span<const double> coords,
                       const Tolerances& tol) {
  return pencil_to_krein(op, gram_pair(op), lambda, coords, tol);
}

Vector pencil_to_krein(const RestrictedOperator& op, const GramPair& gp, double lambda,
                       std::span<const double> coords, const Tolerances& tol) {
  if (coords.size() != op.domain_dim()) throw Error(Errc::DimensionMismatch, "pencil_to_krein: coordinate length");
  const double g_norm = norm_one(gp.a_form);
  const double m_norm = norm_one(gp.b_form);
  if (!(std::abs(lambda) > 1e-12 * g_norm / safe(m_norm)))
    throw Error(Errc::ZeroEigenvalue, "pencil_to_krein: the correspondence needs λ ≠ 0");

  const Vector gc = gp.a_form * coords;
  const Vector mc = gp.b_form * coords;
  const Vector residual = axpby(1.0, gc, -lambda, mc);
  if (norm2(residual) > tol.correspondence * (g_norm + std::abs(lambda) * m_norm) * norm2(coords))
    throw Error(Errc::NotAnEigenpair, "pencil_to_krein: (λ, c) is not a pencil eigenpair");

  Vector v = op.image() * coords;
  for (double& x : v) x /= lambda;
  return v;
}

PencilPair krein_to_pencil(const RestrictedOperator& op, const ExtensionBundle& bundle, std::span<const double> v,
                           const Tolerances& tol) {
  if (v.size() != op.ambient_dim()) throw Error(Errc::DimensionMismatch, "krein_to_pencil: vector length");
  const double vv = dot(v, v);
  if (!(vv > 0.0)) throw Error(Errc::NotAnEigenpair, "krein_to_pencil: zero vector");
  const Vector skv = bundle.krein * v;
  const double lambda = dot(v, skv) / vv;
  if (!(std::abs(lambda) > 1e-12 * norm_one(bundle.krein)))
    throw Error(Errc::ZeroEigenvalue, "krein_to_pencil: v lies in ker(SK)");
  if (norm2(axpby(1.0, skv, -lambda, v)) > tol.correspondence * norm_one(bundle.krein) * std::sqrt(vv))
    throw Error(Errc::NotAnEigenpair, "krein_to_pencil: v is not an eigenvector of SK");

  PencilPair out;
  out.lambda = lambda;
  out.domain_vector = bundle.friedrichs_inverse * skv;
  out.coords = matvec_t(op.basis(), out.domain_vector);
  return out;
}

}  // namespace krein
