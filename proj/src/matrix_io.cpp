#include "ortho_approx/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "ortho_approx/errors.hpp"

namespace oapx::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, const std::string& source, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(source, line, "cannot parse '" + std::string(field) + "' as a number");
  }
  if (!std::isfinite(value)) throw ParseError(source, line, "non-finite value");
  return value;
}

std::uint64_t load_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

void store_u64_le(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<unsigned char>(v & 0xffu);
    v >>= 8;
  }
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf.data(), ptr);
}

DenseMatrix read_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      const std::string_view field =
          view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      row.push_back(parse_field(field, source, line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(rows.front().size()) + " fields, got " +
                           std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, line_no, "no matrix rows");

  const std::size_t r = rows.size();
  const std::size_t c = rows.front().size();
  std::vector<double> data(r * c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) data[j * r + i] = rows[i][j];
  return DenseMatrix(r, c, std::move(data));
}

void write_csv(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

DenseMatrix read_binary(std::istream& in, const std::string& source) {
  std::array<unsigned char, 24> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size())) {
    throw ParseError(source, static_cast<std::size_t>(in.gcount()), "truncated header");
  }
  if (std::memcmp(header.data(), kBinaryMagic.data(), kBinaryMagic.size()) != 0) {
    throw ParseError(source, 0, "bad magic");
  }
  const std::uint64_t rows = load_u64_le(header.data() + 8);
  const std::uint64_t cols = load_u64_le(header.data() + 16);
  if (rows == 0 || cols == 0) throw ParseError(source, 8, "matrix dimensions must be positive");
  if (rows > (std::uint64_t{1} << 40) / cols) throw ParseError(source, 8, "matrix too large");

  const std::size_t count = rows * cols;
  std::vector<double> data(count);
  std::array<unsigned char, 8> word{};
  for (std::size_t k = 0; k < count; ++k) {
    in.read(reinterpret_cast<char*>(word.data()), word.size());
    const std::size_t offset = 24 + k * 8;
    if (in.gcount() != 8) throw ParseError(source, offset, "truncated payload");
    const double value = std::bit_cast<double>(load_u64_le(word.data()));
    if (!std::isfinite(value)) throw ParseError(source, offset, "non-finite value");
    data[k] = value;
  }
  return DenseMatrix(rows, cols, std::move(data));
}

void write_binary(std::ostream& out, const DenseMatrix& m) {
  std::array<unsigned char, 24> header{};
  std::memcpy(header.data(), kBinaryMagic.data(), kBinaryMagic.size());
  store_u64_le(header.data() + 8, m.rows());
  store_u64_le(header.data() + 16, m.cols());
  out.write(reinterpret_cast<const char*>(header.data()), header.size());
  std::array<unsigned char, 8> word{};
  for (double v : m.data()) {
    store_u64_le(word.data(), std::bit_cast<std::uint64_t>(v));
    out.write(reinterpret_cast<const char*>(word.data()), word.size());
  }
}

DenseMatrix read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  const bool binary = in.gcount() == 8 &&
                      std::string_view(magic.data(), magic.size()) == kBinaryMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_binary(in, path) : read_csv(in, path);
}

void write_matrix(const std::string& path, const DenseMatrix& m) {
  const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileNotFound(path);
  if (binary) {
    write_binary(out, m);
  } else {
    write_csv(out, m);
  }
}

Vector read_vector(const std::string& path) {
  const DenseMatrix m = read_matrix(path);
  if (m.rows() != 1 && m.cols() != 1) {
    throw ParseError(path, 0, "expected a single row or column");
  }
  return Vector(m.data().begin(), m.data().end());
}

}  // namespace oapx::io
