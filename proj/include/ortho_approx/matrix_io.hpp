#pragma once

// Matrix files.
//
// Text: CSV, one matrix row per line, '.' decimal separator. Blank lines are
// ignored; every non-blank line must have the same number of fields.
//
// Binary: the 8 bytes "OAPXMAT1", then rows and cols as little-endian
// uint64, then rows * cols little-endian IEEE doubles in column-major order.
//
// Both readers reject NaN and Inf.

#include <iosfwd>
#include <string>
#include <string_view>

#include "ortho_approx/matrix.hpp"

namespace oapx::io {

inline constexpr std::string_view kBinaryMagic = "OAPXMAT1";

DenseMatrix read_csv(std::istream& in, const std::string& source = "<stream>");
void write_csv(std::ostream& out, const DenseMatrix& m);

DenseMatrix read_binary(std::istream& in, const std::string& source = "<stream>");
void write_binary(std::ostream& out, const DenseMatrix& m);

// Sniffs the magic bytes to choose a reader. Throws FileNotFound, ParseError.
DenseMatrix read_matrix(const std::string& path);
// Binary when the path ends in ".bin", CSV otherwise.
void write_matrix(const std::string& path, const DenseMatrix& m);

// A vector file is a matrix with a single row or a single column.
Vector read_vector(const std::string& path);

// 17 significant digits, same text as printf("%.17g").
std::string format_double(double value);

}  // namespace oapx::io
