#include "krein/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include "krein/error.hpp"

namespace krein::mm {

namespace {

struct Header {
  bool coordinate = false;
  bool symmetric = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Header read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "Matrix Market: empty input");
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix")
    throw Error(Errc::ParseError, "Matrix Market: bad banner '" + line + "'");
  Header h;
  format = lower(format);
  if (format == "coordinate") h.coordinate = true;
  else if (format != "array") throw Error(Errc::ParseError, "Matrix Market: unknown format " + format);
  field = lower(field);
  if (field != "real" && field != "double" && field != "integer")
    throw Error(Errc::ParseError, "Matrix Market: unsupported field " + field);
  symmetry = lower(symmetry);
  if (symmetry == "symmetric") h.symmetric = true;
  else if (symmetry != "general") throw Error(Errc::ParseError, "Matrix Market: unsupported symmetry " + symmetry);
  return h;
}

// Next non-comment, non-blank line.
std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return line;
  }
  throw Error(Errc::ParseError, "Matrix Market: unexpected end of input");
}

SparseMatrix read_triplets(std::istream& in) {
  const Header h = read_header(in);
  std::istringstream size_line(next_data_line(in));
  std::size_t rows = 0, cols = 0, count = 0;
  std::vector<Triplet> t;
  if (h.coordinate) {
    if (!(size_line >> rows >> cols >> count)) throw Error(Errc::ParseError, "Matrix Market: bad size line");
    t.reserve(h.symmetric ? 2 * count : count);
    for (std::size_t k = 0; k < count; ++k) {
      std::istringstream ls(next_data_line(in));
      std::size_t i = 0, j = 0;
      double v = 0.0;
      if (!(ls >> i >> j >> v) || i == 0 || j == 0 || i > rows || j > cols)
        throw Error(Errc::ParseError, "Matrix Market: bad entry line " + std::to_string(k + 1));
      t.push_back({i - 1, j - 1, v});
      if (h.symmetric && i != j) t.push_back({j - 1, i - 1, v});
    }
  } else {
    if (!(size_line >> rows >> cols)) throw Error(Errc::ParseError, "Matrix Market: bad size line");
    if (h.symmetric && rows != cols) throw Error(Errc::ParseError, "Matrix Market: symmetric array must be square");
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = h.symmetric ? j : 0; i < rows; ++i) {
        std::istringstream ls(next_data_line(in));
        double v = 0.0;
        if (!(ls >> v)) throw Error(Errc::ParseError, "Matrix Market: bad array entry");
        t.push_back({i, j, v});
        if (h.symmetric && i != j) t.push_back({j, i, v});
      }
  }
  return SparseMatrix::from_triplets(rows, cols, std::move(t));
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  return out;
}

}  // namespace

DenseMatrix read_dense(std::istream& in) { return read_triplets(in).to_dense(); }
SparseMatrix read_sparse(std::istream& in) { return read_triplets(in); }

DenseMatrix read_dense(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dense(in);
}

SparseMatrix read_sparse(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_sparse(in);
}

void write_array(std::ostream& out, const DenseMatrix& a, bool symmetric) {
  out << "%%MatrixMarket matrix array real " << (symmetric ? "symmetric" : "general") << '\n';
  out << a.rows() << ' ' << a.cols() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = symmetric ? j : 0; i < a.rows(); ++i) out << a(i, j) << '\n';
}

void write_coordinate(std::ostream& out, const SparseMatrix& a, bool symmetric) {
  std::vector<Triplet> t = a.triplets();
  if (symmetric) std::erase_if(t, [](const Triplet& e) { return e.col > e.row; });
  out << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general") << '\n';
  out << a.rows() << ' ' << a.cols() << ' ' << t.size() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : t) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value << '\n';
}

void write_array(const std::filesystem::path& path, const DenseMatrix& a, bool symmetric) {
  auto out = open_out(path);
  write_array(out, a, symmetric);
}

void write_coordinate(const std::filesystem::path& path, const SparseMatrix& a, bool symmetric) {
  auto out = open_out(path);
  write_coordinate(out, a, symmetric);
}

}  // namespace krein::mm
