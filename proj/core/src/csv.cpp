#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "hspline/errors.hpp"
#include "hspline/geometry.hpp"

namespace hspline {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
      field.remove_suffix(1);
    fields.push_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw InvalidArgument("csv line " + std::to_string(line_no) + ": cannot parse '" + std::string(text) + "'");
  return value;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

}  // namespace

PointSet read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  const auto header = split(line);
  if (header.empty() || blank(line)) throw InvalidArgument("points csv: missing header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != "x" + std::to_string(i + 1))
      throw InvalidArgument("points csv: header must be x1,...,xn; found '" + std::string(header[i]) + "'");
  }
  const auto dim = static_cast<Eigen::Index>(header.size());

  std::vector<double> flat;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split(line);
    if (static_cast<Eigen::Index>(fields.size()) != dim)
      throw InvalidArgument("points csv line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                            " columns");
    for (auto f : fields) flat.push_back(parse_double(f, line_no));
  }
  const auto rows = static_cast<Eigen::Index>(flat.size()) / dim;
  Eigen::MatrixXd pts(rows, dim);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index d = 0; d < dim; ++d) pts(i, d) = flat[static_cast<std::size_t>(i * dim + d)];
  return PointSet(std::move(pts));
}

PointSet read_points_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  for (int d = 0; d < points.dim(); ++d) out << (d ? "," : "") << "x" << d + 1;
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int d = 0; d < points.dim(); ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", points.point(i)[d]);
      out << (d ? "," : "") << buf;
    }
    out << '\n';
  }
}

Eigen::VectorXd read_values_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  const auto header = split(line);
  if (header.size() != 1 || header[0] != "value") throw InvalidArgument("values csv: header must be 'value'");
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split(line);
    if (fields.size() != 1)
      throw InvalidArgument("values csv line " + std::to_string(line_no) + ": expected one column");
    values.push_back(parse_double(fields[0], line_no));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd read_values_csv(const std::string& path) {
  auto in = open_or_throw(path);
  return read_values_csv(in);
}

}  // namespace hspline
