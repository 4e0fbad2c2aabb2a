#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ortho_approx/errors.hpp"
#include "ortho_approx/matrix.hpp"
#include "ortho_approx/matrix_io.hpp"
#include "test_support.hpp"

using namespace oapx;

TEST_CASE("dense matrix construction") {
  const DenseMatrix m = DenseMatrix::from_columns({{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m(2, 0) == 3.0);
  CHECK(m(0, 1) == 4.0);
  CHECK(m.data().size() == 6);

  CHECK_THROWS_AS(DenseMatrix(0, 3), InvalidMatrix);
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), InvalidMatrix);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
                  InvalidMatrix);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {std::numeric_limits<double>::infinity()}), InvalidMatrix);
  CHECK_THROWS_AS(DenseMatrix::from_columns({{1.0, 2.0}, {3.0}}), DimensionMismatch);
}

TEST_CASE("dense matrix arithmetic") {
  const DenseMatrix a = DenseMatrix::from_columns({{1.0, 3.0}, {2.0, 4.0}});  // [[1,2],[3,4]]
  const DenseMatrix b = DenseMatrix::identity(2);
  CHECK(matmul(a, b) == a);
  const DenseMatrix sq = matmul(a, a);
  CHECK(sq(0, 0) == 7.0);
  CHECK(sq(0, 1) == 10.0);
  CHECK(sq(1, 0) == 15.0);
  CHECK(sq(1, 1) == 22.0);
  CHECK(transpose(a)(0, 1) == 3.0);
  CHECK(max_abs_diff(a, b) == 4.0 - 1.0);
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(30.0)));
  CHECK((a - a) == DenseMatrix(2, 2));
  CHECK((2.0 * b)(1, 1) == 2.0);
  const Vector tx = transpose_times(a, std::vector<double>{1.0, 1.0});
  CHECK(tx == Vector{4.0, 6.0});
  CHECK_THROWS_AS(transpose_times(a, std::vector<double>{1.0}), DimensionMismatch);
  CHECK_THROWS_AS(matmul(a, DenseMatrix(3, 1)), DimensionMismatch);
}

TEST_CASE("csv reader") {
  std::istringstream in("1, 2.5,-3\n\n4,5e-1,+6\r\n");
  const DenseMatrix m = io::read_csv(in);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m(0, 1) == 2.5);
  CHECK(m(1, 1) == 0.5);
  CHECK(m(1, 2) == 6.0);

  std::istringstream ragged("1,2\n3\n");
  try {
    io::read_csv(ragged, "ragged.csv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location() == 2);
    CHECK(std::string(e.what()).find("ragged.csv:2") != std::string::npos);
  }

  std::istringstream nan_text("1,nan\n");
  CHECK_THROWS_AS(io::read_csv(nan_text), ParseError);
  std::istringstream inf_text("inf\n");
  CHECK_THROWS_AS(io::read_csv(inf_text), ParseError);
  std::istringstream word("1,abc\n");
  CHECK_THROWS_AS(io::read_csv(word), ParseError);
  std::istringstream empty_field("1,,2\n");
  CHECK_THROWS_AS(io::read_csv(empty_field), ParseError);
  std::istringstream nothing("\n\n");
  CHECK_THROWS_AS(io::read_csv(nothing), ParseError);
}

TEST_CASE("binary layout is bit-exact") {
  const DenseMatrix m = DenseMatrix::from_columns({{1.0, -2.0}});
  std::ostringstream out;
  io::write_binary(out, m);
  const std::string bytes = out.str();
  REQUIRE(bytes.size() == 8 + 16 + 16);
  CHECK(bytes.substr(0, 8) == "OAPXMAT1");
  const std::string rows_le("\x02\0\0\0\0\0\0\0", 8);
  const std::string cols_le("\x01\0\0\0\0\0\0\0", 8);
  CHECK(bytes.substr(8, 8) == rows_le);
  CHECK(bytes.substr(16, 8) == cols_le);
  // 1.0 = 0x3FF0000000000000, -2.0 = 0xC000000000000000, little-endian.
  CHECK(bytes.substr(24, 8) == std::string("\0\0\0\0\0\0\xF0\x3F", 8));
  CHECK(bytes.substr(32, 8) == std::string("\0\0\0\0\0\0\0\xC0", 8));
}

TEST_CASE("binary reader rejects malformed input") {
  std::istringstream bad_magic(std::string("OAPXMAT2") + std::string(16, '\0'));
  CHECK_THROWS_AS(io::read_binary(bad_magic), ParseError);

  std::ostringstream out;
  io::write_binary(out, DenseMatrix::from_columns({{1.0, 2.0}}));
  std::string truncated = out.str();
  truncated.resize(truncated.size() - 3);
  std::istringstream short_in(truncated);
  CHECK_THROWS_AS(io::read_binary(short_in), ParseError);

  std::string with_nan = out.str();
  const std::string nan_bits("\0\0\0\0\0\0\xF8\x7F", 8);
  with_nan.replace(24, 8, nan_bits);
  std::istringstream nan_in(with_nan);
  try {
    io::read_binary(nan_in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location() == 24);
  }
}

TEST_CASE("file round trip through both formats") {
  std::mt19937_64 rng(11);
  const DenseMatrix m = testing::random_matrix(rng, 7, 3, 1e3);
  const auto dir = std::filesystem::temp_directory_path() / "oapx_matrix_test";
  std::filesystem::create_directories(dir);
  for (const char* name : {"m.csv", "m.bin"}) {
    const std::string path = (dir / name).string();
    io::write_matrix(path, m);
    CHECK(io::read_matrix(path) == m);  // 17 significant digits round-trip exactly
  }
  CHECK_THROWS_AS(io::read_matrix((dir / "missing.csv").string()), FileNotFound);

  const std::string row_path = (dir / "row.csv").string();
  std::ofstream(row_path) << "1,2,3\n";
  CHECK(io::read_vector(row_path) == Vector{1.0, 2.0, 3.0});
  io::write_matrix(row_path, DenseMatrix(2, 2));
  CHECK_THROWS_AS(io::read_vector(row_path), ParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("double formatting uses 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
}
