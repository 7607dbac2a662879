#include "krein/instance_io.hpp"

#include <fstream>

#include "krein/error.hpp"
#include "krein/matrix_market.hpp"

namespace krein {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::ParseError, std::string("instance: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("instance: field '") + key + "': " + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::ParseError, std::string("instance: missing field '") + key + "'");
  return j.at(key);
}

json mtx_reference(const std::filesystem::path& json_path, const char* tag, const DenseMatrix& a) {
  std::filesystem::path file = json_path;
  file.replace_extension(std::string(".") + tag + ".mtx");
  mm::write_array(file, a);
  return json{{"matrix_market", file.filename().string()}};
}

}  // namespace

json matrix_to_json(const DenseMatrix& a) {
  return json{{"rows", a.rows()},
              {"cols", a.cols()},
              {"order", "column-major"},
              {"data", std::vector<double>(a.data().begin(), a.data().end())}};
}

DenseMatrix matrix_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_object() && j.contains("matrix_market")) {
    const auto name = field<std::string>(j, "matrix_market");
    return mm::read_dense(base_dir / name);
  }
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  const auto order = j.value("order", std::string("column-major"));
  const auto data = field<std::vector<double>>(j, "data");
  if (data.size() != rows * cols)
    throw Error(Errc::ParseError, "instance: matrix data length " + std::to_string(data.size()) +
                                      " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  DenseMatrix a(rows, cols);
  if (order == "column-major") {
    std::copy(data.begin(), data.end(), a.data().begin());
  } else if (order == "row-major") {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) a(i, k) = data[i * cols + k];
  } else {
    throw Error(Errc::ParseError, "instance: unknown matrix order '" + order + "'");
  }
  return a;
}

json grid_to_json(const GridSpec& g) {
  json j{{"dimension", g.dimension}, {"nx", g.nx}, {"label", g.label()}, {"h", json::array({g.hx()})}};
  if (g.dimension == 2) {
    j["ny"] = g.ny;
    j["lx"] = g.lx;
    j["ly"] = g.ly;
    j["h"].push_back(g.hy());
  }
  j["weight"] = g.weight();
  return j;
}

GridSpec grid_from_json(const json& j) {
  const int dim = field<int>(j, "dimension");
  GridSpec g = dim == 1 ? GridSpec::interval(field<std::size_t>(j, "nx"))
                        : GridSpec::rectangle(field<std::size_t>(j, "nx"), field<std::size_t>(j, "ny"),
                                              j.value("lx", 1.0), j.value("ly", 1.0));
  g.dimension = dim;
  g.validate();
  return g;
}

json instance_to_json(const RestrictedOperator& op, const InstanceWriteOptions& options) {
  json doc{{"schema", kInstanceSchema},
           {"n", op.ambient_dim()},
           {"d", op.domain_dim()},
           {"epsilon", op.epsilon()},
           {"provenance", op.provenance()},
           {"E", matrix_to_json(op.basis())},
           {"B", matrix_to_json(op.image())}};
  if (options.include_ambient && op.ambient()) doc["A"] = matrix_to_json(*op.ambient());
  if (options.grid) doc["grid"] = grid_to_json(*options.grid);
  return doc;
}

RestrictedOperator instance_from_json(const json& doc, const std::filesystem::path& base_dir, const Tolerances& tol) {
  if (!doc.is_object()) throw Error(Errc::ParseError, "instance: document is not a JSON object");
  const auto schema = field<std::string>(doc, "schema");
  if (schema != kInstanceSchema) throw Error(Errc::ParseError, "instance: unsupported schema '" + schema + "'");
  const auto n = field<std::size_t>(doc, "n");
  const auto d = field<std::size_t>(doc, "d");
  DenseMatrix e = matrix_from_json(member(doc, "E"), base_dir);
  DenseMatrix b = matrix_from_json(member(doc, "B"), base_dir);
  if (e.rows() != n || e.cols() != d || b.rows() != n || b.cols() != d)
    throw Error(Errc::InstanceInvalid, "instance: E or B disagrees with the declared n, d");
  const double eps = doc.contains("epsilon") ? field<double>(doc, "epsilon") : -1.0;
  auto op = RestrictedOperator::from_parts(std::move(e), std::move(b), eps, tol,
                                           doc.value("provenance", std::string("instance file")));
  if (doc.contains("A")) op = op.with_ambient(matrix_from_json(doc.at("A"), base_dir));
  return op;
}

void save_instance(const std::filesystem::path& path, const RestrictedOperator& op,
                   const InstanceWriteOptions& options) {
  json doc = instance_to_json(op, options);
  if (options.matrix_market) {
    doc["E"] = mtx_reference(path, "E", op.basis());
    doc["B"] = mtx_reference(path, "B", op.image());
    if (doc.contains("A")) doc["A"] = mtx_reference(path, "A", *op.ambient());
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot open '" + path.string() + "' for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw Error(Errc::IoError, "write to '" + path.string() + "' failed");
}

RestrictedOperator load_instance(const std::filesystem::path& path, const Tolerances& tol) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, "instance '" + path.string() + "': " + e.what());
  }
  return instance_from_json(doc, path.parent_path(), tol);
}

}  // namespace krein
