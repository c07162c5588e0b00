#include "mrnmf/matrix_io.hpp"

#include "mrnmf/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace mrnmf {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last) {
    throw FormatError("cannot parse '" + std::string(token) + "' as a number", line);
  }
  return value;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  token = trim(token);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError("cannot parse '" + std::string(token) + "' as an index", line);
  }
  return value;
}

// Cell coordinates are 1-based in messages.
double checked_entry(double v, std::size_t row, std::size_t col) {
  if (!std::isfinite(v)) {
    throw DomainError("entry at row " + std::to_string(row) + ", col " + std::to_string(col) +
                      " is not finite");
  }
  if (v < 0.0) {
    std::ostringstream msg;
    msg << "negative entry " << v << " at row " << row << ", col " << col;
    throw DomainError(msg.str());
  }
  return v == 0.0 ? 0.0 : v;  // drops the sign of -0
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view name) {
  const std::string n = lower(name);
  if (n == "csv") return MatrixFormat::csv;
  if (n == "matrix_market" || n == "matrixmarket" || n == "mtx" || n == "mm") {
    return MatrixFormat::matrix_market;
  }
  throw ParameterError("unknown matrix format '" + std::string(name) + "'");
}

MatrixFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  return (ext == ".mtx" || ext == ".mm") ? MatrixFormat::matrix_market : MatrixFormat::csv;
}

NonNegMatrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string_view field =
          body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                             : comma - start);
      row.push_back(checked_entry(parse_number(field, line_no), rows.size() + 1, row.size() + 1));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("expected " + std::to_string(rows.front().size()) + " fields, found " +
                            std::to_string(row.size()),
                        line_no);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DomainError("empty matrix");

  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return NonNegMatrix(std::move(m));
}

NonNegMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DomainError("empty matrix");
  ++line_no;
  const std::string banner_line = lower(line);
  const auto banner = split_tokens(banner_line);
  if (banner.size() != 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix") {
    throw FormatError("missing '%%MatrixMarket matrix' banner", line_no);
  }
  const bool dense = banner[2] == "array";
  if (!dense && banner[2] != "coordinate") {
    throw FormatError("unsupported storage '" + std::string(banner[2]) + "'", line_no);
  }
  if (banner[3] != "real" && banner[3] != "integer" && banner[3] != "double") {
    throw FormatError("unsupported field '" + std::string(banner[3]) + "'", line_no);
  }
  if (banner[4] != "general") {
    throw FormatError("unsupported symmetry '" + std::string(banner[4]) + "'", line_no);
  }

  // Size line, skipping comments and blanks.
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, header_line)) {
    ++line_no;
    const std::string_view body = trim(header_line);
    if (body.empty() || body.front() == '%') continue;
    header = split_tokens(body);
    break;
  }
  if (header.size() != (dense ? 2u : 3u)) throw FormatError("malformed size line", line_no);
  const std::size_t rows = parse_index(header[0], line_no);
  const std::size_t cols = parse_index(header[1], line_no);
  if (rows == 0 || cols == 0) throw DomainError("empty matrix");
  const std::size_t expected = dense ? rows * cols : parse_index(header[2], line_no);

  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '%') continue;
    const auto tokens = split_tokens(body);
    if (dense) {
      for (const auto token : tokens) {
        if (seen >= expected) throw FormatError("too many values", line_no);
        const std::size_t i = seen % rows;
        const std::size_t j = seen / rows;
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            checked_entry(parse_number(token, line_no), i + 1, j + 1);
        ++seen;
      }
    } else {
      if (tokens.size() != 3) throw FormatError("expected 'row col value'", line_no);
      if (seen >= expected) throw FormatError("too many entries", line_no);
      const std::size_t i = parse_index(tokens[0], line_no);
      const std::size_t j = parse_index(tokens[1], line_no);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw FormatError("index out of range", line_no);
      }
      m(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) =
          checked_entry(parse_number(tokens[2], line_no), i, j);
      ++seen;
    }
  }
  if (seen != expected) {
    throw FormatError("expected " + std::to_string(expected) + " values, found " +
                          std::to_string(seen),
                      line_no);
  }
  return NonNegMatrix(std::move(m));
}

NonNegMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return format == MatrixFormat::csv ? read_csv(in) : read_matrix_market(in);
}

void write_csv(const Matrix& m, std::ostream& out) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_matrix_market(const Matrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
  }
}

void save_matrix(const NonNegMatrix& m, const std::filesystem::path& path,
                 MatrixFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  if (format == MatrixFormat::csv) {
    write_csv(m.matrix(), out);
  } else {
    write_matrix_market(m.matrix(), out);
  }
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace mrnmf
