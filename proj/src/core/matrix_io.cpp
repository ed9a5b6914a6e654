#include "core/matrix_io.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <array>
#include <charconv>
#include <sstream>
#include <vector>

namespace nspsd {

namespace {

bool has_csv_extension(const std::string& path) {
  if (path.size() < 4) return false;
  std::string ext = path.substr(path.size() - 4);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv";
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
  fail(ErrorCode::parse_error, source + ":" + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& token, const std::string& source, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size() || errno == ERANGE) {
    parse_fail(source, line, "cannot parse '" + token + "' as a number");
  }
  if (!std::isfinite(v)) parse_fail(source, line, "non-finite entry '" + token + "'");
  return v;
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::io_error, "failed writing '" + path + "'");
}

}  // namespace

ComplexDense MatrixData::as_complex() const {
  return is_complex ? ComplexDense(re, im) : ComplexDense::from_real(re);
}

MatrixData parse_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) parse_fail(source, 1, "empty file");
  ++lineno;
  const std::vector<std::string> header = split_whitespace(lower(line));
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix") {
    parse_fail(source, lineno, "expected a '%%MatrixMarket matrix array <field> general' header");
  }
  if (header[2] != "array") {
    parse_fail(source, lineno, "unsupported format '" + header[2] + "', only 'array' is read");
  }
  MatrixData data;
  if (header[3] == "complex") {
    data.is_complex = true;
  } else if (header[3] != "real" && header[3] != "integer") {
    parse_fail(source, lineno, "unsupported field '" + header[3] + "'");
  }
  if (header[4] != "general") {
    parse_fail(source, lineno, "unsupported symmetry '" + header[4] + "', only 'general' is read");
  }

  long rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    const auto tok = split_whitespace(line);
    if (tok.size() != 2) parse_fail(source, lineno, "expected '<rows> <cols>'");
    char* end = nullptr;
    rows = std::strtol(tok[0].c_str(), &end, 10);
    const bool ok_rows = *end == '\0';
    cols = std::strtol(tok[1].c_str(), &end, 10);
    if (!ok_rows || *end != '\0' || rows < 0 || cols < 0) {
      parse_fail(source, lineno, "invalid size line '" + trim(line) + "'");
    }
    break;
  }
  if (rows < 0) parse_fail(source, lineno, "missing size line");

  const long expected = rows * cols;
  const std::size_t per_entry = data.is_complex ? 2 : 1;
  data.re.resize(rows, cols);
  if (data.is_complex) data.im.resize(rows, cols);
  long count = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    const auto tok = split_whitespace(line);
    if (tok.size() != per_entry) {
      parse_fail(source, lineno, "expected " + std::to_string(per_entry) + " value(s) per entry, got " +
                                     std::to_string(tok.size()));
    }
    if (count >= expected) {
      parse_fail(source, lineno, "more entries than the " + std::to_string(expected) + " declared");
    }
    const Eigen::Index i = count % rows;
    const Eigen::Index j = count / rows;
    data.re(i, j) = parse_number(tok[0], source, lineno);
    if (data.is_complex) data.im(i, j) = parse_number(tok[1], source, lineno);
    ++count;
  }
  if (count != expected) {
    parse_fail(source, lineno, "expected " + std::to_string(expected) + " entries for a " +
                                   std::to_string(rows) + "x" + std::to_string(cols) +
                                   " matrix, found " + std::to_string(count));
  }
  return data;
}

MatrixData parse_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || trim(line)[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      row.push_back(parse_number(trim(cell), source, lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(source, lineno, "row has " + std::to_string(row.size()) + " columns, expected " +
                                     std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail(source, lineno, "no data rows");
  MatrixData data;
  data.re.resize(static_cast<Eigen::Index>(rows.size()),
                 static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      data.re(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return data;
}

MatrixData read_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  return has_csv_extension(path) ? parse_csv(in, path) : parse_matrix_market(in, path);
}

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_matrix_market(const Matrix& m) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix array real general\n"
     << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) os << shortest(m(i, j)) << '\n';
  }
  return os.str();
}

std::string format_matrix_market(const ComplexDense& m) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix array complex general\n"
     << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) os << shortest(m.re(i, j)) << ' ' << shortest(m.im(i, j)) << '\n';
  }
  return os.str();
}

std::string format_csv(const Matrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << shortest(m(i, j));
    os << '\n';
  }
  return os.str();
}

void write_matrix(const Matrix& m, const std::string& path) {
  write_text(has_csv_extension(path) ? format_csv(m) : format_matrix_market(m), path);
}

void write_matrix(const ComplexDense& m, const std::string& path) {
  if (has_csv_extension(path)) {
    fail(ErrorCode::invalid_argument, "CSV output holds real matrices only: '" + path + "'");
  }
  write_text(format_matrix_market(m), path);
}

}  // namespace nspsd
