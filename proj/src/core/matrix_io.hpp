#pragma once

#include "core/linalg.hpp"

#include <iosfwd>
#include <string>

namespace nspsd {

// A matrix read from disk; im is empty unless is_complex.
struct MatrixData {
  bool is_complex = false;
  Matrix re;
  Matrix im;

  ComplexDense as_complex() const;
};

// Matrix Market array format (real, integer or complex field, general
// symmetry), or comma-separated rows when the path ends in ".csv".
MatrixData read_matrix(const std::string& path);

MatrixData parse_matrix_market(std::istream& in, const std::string& source);
MatrixData parse_csv(std::istream& in, const std::string& source);

// Column-major entries with 17 significant digits.
std::string format_matrix_market(const Matrix& m);
std::string format_matrix_market(const ComplexDense& m);
std::string format_csv(const Matrix& m);

// Format chosen by extension as for read_matrix; CSV holds real data only.
void write_matrix(const Matrix& m, const std::string& path);
void write_matrix(const ComplexDense& m, const std::string& path);

}  // namespace nspsd
