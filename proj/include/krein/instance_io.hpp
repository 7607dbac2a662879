#pragma once

// Instance documents, schema "krein-kit/1":
//
//   { "schema": "krein-kit/1", "n": .., "d": .., "epsilon": ..,
//     "E": <matrix>, "B": <matrix>, "A": <matrix, optional>,
//     "provenance": "..", "grid": {..optional GridSpec..} }
//
// A <matrix> is either embedded,
//   { "rows": r, "cols": c, "order": "column-major", "data": [...] }
// or a Matrix Market file relative to the document,
//   { "matrix_market": "name.mtx" }.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "krein/dense.hpp"
#include "krein/discretize.hpp"
#include "krein/extension.hpp"
#include "krein/tolerances.hpp"

namespace krein {

inline constexpr const char* kInstanceSchema = "krein-kit/1";

nlohmann::json matrix_to_json(const DenseMatrix& a);
DenseMatrix matrix_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

nlohmann::json grid_to_json(const GridSpec& g);
GridSpec grid_from_json(const nlohmann::json& j);

struct InstanceWriteOptions {
  bool matrix_market = false;  // write E, B (and A) as sibling .mtx files
  bool include_ambient = true;
  std::optional<GridSpec> grid;
};

nlohmann::json instance_to_json(const RestrictedOperator& op, const InstanceWriteOptions& options = {});

/// Throws ParseError on malformed documents; invariant violations surface
/// with their own codes (AsymmetricAmbient, NotStrictlyPositive, ...).
RestrictedOperator instance_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {},
                                      const Tolerances& tol = {});

void save_instance(const std::filesystem::path& path, const RestrictedOperator& op,
                   const InstanceWriteOptions& options = {});
RestrictedOperator load_instance(const std::filesystem::path& path, const Tolerances& tol = {});

}  // namespace krein
