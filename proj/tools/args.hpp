#pragma once

// Parsing of the compact source arguments used by krein-kit:
//   --random n=40 d=15 eps=0.5 seed=7
//   --grid 1d N=50      --grid 2d 7x7      --2d Nx=15 Ny=15

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "krein/convergence.hpp"
#include "krein/discretize.hpp"

namespace krein::cli {

struct RandomSpec {
  std::size_t n = 40;
  std::size_t d = 15;
  double eps = 0.5;
  std::uint64_t seed = 7;
};

/// key=value tokens; throws ParseError on malformed or unknown keys.
std::map<std::string, std::string> parse_key_values(const std::vector<std::string>& tokens,
                                                    const std::vector<std::string>& allowed);

RandomSpec parse_random(const std::vector<std::string>& tokens);

/// "1d N=50", "2d 7x7", "2d Nx=7 Ny=9 Lx=1 Ly=2". Validates the grid.
GridSpec parse_grid(const std::vector<std::string>& tokens);
/// As parse_grid with the dimension already fixed (for --1d / --2d).
GridSpec parse_grid(int dimension, const std::vector<std::string>& tokens);

GridProblem make_grid_problem(const GridSpec& spec);

std::vector<std::size_t> parse_levels(const std::vector<std::string>& tokens);

}  // namespace krein::cli
