#pragma once

#include <filesystem>
#include <iosfwd>

#include "krein/dense.hpp"
#include "krein/sparse.hpp"

namespace krein::mm {

/// Reads `matrix {coordinate|array} real {general|symmetric}`. Symmetric
/// files are expanded to the full matrix.
DenseMatrix read_dense(std::istream& in);
SparseMatrix read_sparse(std::istream& in);
DenseMatrix read_dense(const std::filesystem::path& path);
SparseMatrix read_sparse(const std::filesystem::path& path);

/// Array format, column-major entries; `symmetric` writes the lower triangle only.
void write_array(std::ostream& out, const DenseMatrix& a, bool symmetric = false);
void write_coordinate(std::ostream& out, const SparseMatrix& a, bool symmetric = false);
void write_array(const std::filesystem::path& path, const DenseMatrix& a, bool symmetric = false);
void write_coordinate(const std::filesystem::path& path, const SparseMatrix& a, bool symmetric = false);

}  // namespace krein::mm
