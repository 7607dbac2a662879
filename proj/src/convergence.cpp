#include "krein/convergence.hpp"

#include <cmath>

#include "krein/error.hpp"

namespace krein {

Richardson richardson_extrapolate(const std::vector<double>& h, const std::vector<double>& values) {
  if (h.size() != values.size()) throw Error(Errc::DimensionMismatch, "richardson: h and values differ in length");
  if (h.size() < 3) throw Error(Errc::InsufficientLevels, "richardson: need at least three levels");
  const std::size_t n = h.size();
  const double h1 = h[n - 3], h2 = h[n - 2], h3 = h[n - 1];
  const double l1 = values[n - 3], l2 = values[n - 2], l3 = values[n - 1];
  if (!(h1 > h2 && h2 > h3 && h3 > 0.0))
    throw Error(Errc::InvalidShape, "richardson: spacings must be strictly decreasing");

  const double ratio = (l1 - l2) / (l2 - l3);
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw Error(Errc::ConvergenceFailure, "richardson: sequence is not monotone");

  // (h1^p − h2^p)/(h2^p − h3^p) is increasing in p; bisect for the match.
  auto model = [&](double p) {
    return (std::pow(h1, p) - std::pow(h2, p)) / (std::pow(h2, p) - std::pow(h3, p));
  };
  double lo = 1e-3, hi = 12.0;
  if (ratio < model(lo) || ratio > model(hi))
    throw Error(Errc::ConvergenceFailure, "richardson: observed order outside (0, 12)");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (model(mid) < ratio ? lo : hi) = mid;
  }
  Richardson out;
  out.order = 0.5 * (lo + hi);
  const double c = (l2 - l3) / (std::pow(h2, out.order) - std::pow(h3, out.order));
  out.limit = l3 - c * std::pow(h3, out.order);
  const double r = h2 / h3;
  out.uncertainty = 1.25 * std::abs(l3 - l2) / (std::pow(r, out.order) - 1.0);
  return out;
}

GridFamily parse_grid_family(const std::string& tag) {
  if (tag == "1d" || tag == "interval") return GridFamily::interval;
  if (tag == "2d" || tag == "square") return GridFamily::square;
  throw Error(Errc::UnknownProblem, "unknown grid family '" + tag + "'");
}

ConvergenceStudy convergence_study(GridFamily family, const std::vector<std::size_t>& levels, SolveMethod method) {
  if (levels.size() < 3)
    throw Error(Errc::InsufficientLevels, "convergence study needs at least three levels (got " +
                                              std::to_string(levels.size()) + ")");
  ConvergenceStudy study;
  study.family = family;
  std::vector<double> hs, lambdas;
  for (std::size_t n : levels) {
    const GridProblem problem = family == GridFamily::interval ? interval_problem(n) : rectangle_problem(n, n);
    ConvergenceLevel lv;
    lv.n = n;
    lv.h = problem.spec().hx();
    lv.lambda1 = grid_pencil_eigenvalues(problem, 1, method).front();
    hs.push_back(lv.h);
    lambdas.push_back(lv.lambda1);
    if (hs.size() >= 3) {
      try {
        lv.observed_order = richardson_extrapolate(hs, lambdas).order;
      } catch (const Error&) {
        lv.observed_order = 0.0;
      }
    }
    study.levels.push_back(lv);
  }

  study.monotone = true;
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    const bool same_direction = (lambdas[i] - lambdas[i - 1]) * (lambdas[1] - lambdas[0]) > 0.0;
    if (!same_direction) study.monotone = false;
  }
  study.extrapolation = richardson_extrapolate(hs, lambdas);
  return study;
}

}  // namespace krein
