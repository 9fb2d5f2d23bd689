#include "ebsw/measure.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ebsw/error.hpp"

namespace ebsw {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ArgumentError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                        std::to_string(rows_ * cols_));
  }
}

EmpiricalMeasure::EmpiricalMeasure(Matrix points) : points_(std::move(points)) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw EmptyInputError("empirical measure needs at least one point of dimension >= 1");
  }
  const auto data = points_.data();
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k])) {
      throw ValidationError("non-finite coordinate at row " + std::to_string(k / points_.cols() + 1) +
                            ", column " + std::to_string(k % points_.cols() + 1));
    }
  }
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t n, std::size_t d, std::vector<double> coords)
    : EmpiricalMeasure(Matrix(n, d, std::move(coords))) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  // from_chars rejects a leading '+', which some writers emit.
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (field.empty() || ptr != end) {
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) +
                      "' as a number");
  }
  // "inf" and "nan" parse successfully and are rejected here.
  if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
    throw ValidationError("line " + std::to_string(line_no) + ": non-finite value '" +
                          std::string(field) + "'");
  }
  return value;
}

}  // namespace

EmpiricalMeasure parse_measure_csv(std::string_view text) {
  std::vector<double> coords;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) continue;

    std::size_t row_cols = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto field = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
      coords.push_back(parse_field(field, line_no));
      ++row_cols;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = row_cols;
    } else if (row_cols != cols) {
      throw FormatError("line " + std::to_string(line_no) + ": ragged row with " +
                        std::to_string(row_cols) + " columns, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) throw EmptyInputError("no points in input");
  return EmpiricalMeasure(rows, cols, std::move(coords));
}

EmpiricalMeasure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_csv(buf.str());
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_measure_csv(const EmpiricalMeasure& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto p = m.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out += ',';
      out += format_double(p[j]);
    }
    out += '\n';
  }
  return out;
}

void save_measure(const EmpiricalMeasure& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << format_measure_csv(m);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace ebsw
