#include "args.hpp"

#include <algorithm>
#include <charconv>

#include "krein/error.hpp"

namespace krein::cli {

namespace {

template <class T>
T number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw Error(Errc::ParseError, "cannot parse '" + text + "' as a number for " + key);
  return value;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::vector<std::string>& tokens,
                                                    const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> out;
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(Errc::ParseError, "expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw Error(Errc::ParseError, "unknown key '" + key + "'");
    out[key] = token.substr(eq + 1);
  }
  return out;
}

RandomSpec parse_random(const std::vector<std::string>& tokens) {
  const auto kv = parse_key_values(tokens, {"n", "d", "eps", "seed"});
  RandomSpec spec;
  if (kv.count("n")) spec.n = number<std::size_t>("n", kv.at("n"));
  if (kv.count("d")) spec.d = number<std::size_t>("d", kv.at("d"));
  if (kv.count("eps")) spec.eps = number<double>("eps", kv.at("eps"));
  if (kv.count("seed")) spec.seed = number<std::uint64_t>("seed", kv.at("seed"));
  return spec;
}

GridSpec parse_grid(int dimension, const std::vector<std::string>& tokens) {
  GridSpec spec = dimension == 1 ? GridSpec::interval(0) : GridSpec::rectangle(0, 0);
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      const auto x = lower(token).find('x');
      if (dimension == 2 && x != std::string::npos) {
        spec.nx = number<std::size_t>("Nx", token.substr(0, x));
        spec.ny = number<std::size_t>("Ny", token.substr(x + 1));
      } else {
        spec.nx = number<std::size_t>("N", token);
        if (dimension == 2) spec.ny = spec.nx;
      }
      continue;
    }
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "N" || key == "n") {
      spec.nx = number<std::size_t>(key, value);
      if (dimension == 2) spec.ny = spec.nx;
    } else if (dimension == 2 && (key == "Nx" || key == "nx")) {
      spec.nx = number<std::size_t>(key, value);
    } else if (dimension == 2 && (key == "Ny" || key == "ny")) {
      spec.ny = number<std::size_t>(key, value);
    } else if (dimension == 2 && (key == "Lx" || key == "lx")) {
      spec.lx = number<double>(key, value);
    } else if (dimension == 2 && (key == "Ly" || key == "ly")) {
      spec.ly = number<double>(key, value);
    } else {
      throw Error(Errc::ParseError, "unknown grid key '" + key + "'");
    }
  }
  if (spec.nx == 0) throw Error(Errc::ParseError, "grid size missing");
  spec.validate();
  return spec;
}

GridSpec parse_grid(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw Error(Errc::ParseError, "grid: expected 1d or 2d");
  const std::string dim = lower(tokens.front());
  const std::vector<std::string> rest(tokens.begin() + 1, tokens.end());
  if (dim == "1d") return parse_grid(1, rest);
  if (dim == "2d") return parse_grid(2, rest);
  throw Error(Errc::ParseError, "grid: expected 1d or 2d, got '" + tokens.front() + "'");
}

GridProblem make_grid_problem(const GridSpec& spec) {
  return spec.dimension == 1 ? interval_problem(spec.nx) : rectangle_problem(spec.nx, spec.ny, spec.lx, spec.ly);
}

std::vector<std::size_t> parse_levels(const std::vector<std::string>& tokens) {
  std::vector<std::size_t> levels;
  for (const auto& token : tokens) {
    std::size_t start = 0;
    while (start <= token.size()) {
      const auto comma = token.find(',', start);
      const std::string part = token.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) levels.push_back(number<std::size_t>("level", part));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return levels;
}

}  // namespace krein::cli
