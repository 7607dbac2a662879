#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "krein/discretize.hpp"

namespace krein {

/// λ(h) ≈ λ* + C·h^p fitted through the last three (h, λ) samples.
struct Richardson {
  double order = 0.0;
  double limit = 0.0;
  /// Grid convergence index on the finest pair: 1.25·|λ_f − λ_m| / (r^p − 1).
  double uncertainty = 0.0;
};

/// Requires three samples with strictly decreasing h and monotone values;
/// the order is solved exactly for non-uniform refinement ratios.
Richardson richardson_extrapolate(const std::vector<double>& h, const std::vector<double>& values);

enum class GridFamily { interval, square };

GridFamily parse_grid_family(const std::string& tag);

struct ConvergenceLevel {
  std::size_t n = 0;
  double h = 0.0;
  double lambda1 = 0.0;
  double observed_order = 0.0;  // from this level and the two before; 0 if unavailable
};

struct ConvergenceStudy {
  GridFamily family = GridFamily::interval;
  std::vector<ConvergenceLevel> levels;
  Richardson extrapolation;
  bool monotone = false;
};

/// Refinement study of the smallest buckling eigenvalue. Throws
/// InsufficientLevels for fewer than three levels.
ConvergenceStudy convergence_study(GridFamily family, const std::vector<std::size_t>& levels,
                                   SolveMethod method = SolveMethod::iterative);

}  // namespace krein
