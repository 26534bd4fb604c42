#include "orthocal/measurement_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "orthocal/error.hpp"

namespace orthocal {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string format_decimal(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "cannot serialise a non-finite value");
  }
  if (value == 0.0) return "0";  // also folds -0
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (res.ec != std::errc{}) throw Error(ErrorCode::InvalidArgument, "value too long to format");
  return {buf, res.ptr};
}

double parse_decimal(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + std::string(text) + "'");
  }
  return value;
}

std::string measurement_header(MeasurementForm form) {
  std::string out;
  for (const auto& row : layout(form)) {
    if (!out.empty()) out += ',';
    out += row.name;
  }
  return out;
}

std::string write_measurements(const MeasurementSet& set, std::string_view comment) {
  if (static_cast<std::size_t>(set.values.size()) != row_count(set.form)) {
    throw Error(ErrorCode::InvalidArgument, "measurement vector has the wrong length");
  }
  std::ostringstream out;
  std::istringstream lines{std::string(comment)};
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  out << measurement_header(set.form) << '\n';
  for (Eigen::Index i = 0; i < set.values.size(); ++i) {
    if (i) out << ',';
    out << format_decimal(set.values(i));
  }
  out << '\n';
  return out.str();
}

MeasurementSet read_measurements(std::string_view text, std::optional<MeasurementForm> expected) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    const auto line = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::ParseError, "measurement file has no header");

  MeasurementSet set;
  const std::string header(lines.front());
  if (header == measurement_header(MeasurementForm::Reduced)) {
    set.form = MeasurementForm::Reduced;
  } else if (header == measurement_header(MeasurementForm::Full)) {
    set.form = MeasurementForm::Full;
  } else {
    throw Error(ErrorCode::ParseError, "unrecognised measurement header '" + header +
                                           "'; expected '" +
                                           measurement_header(expected.value_or(
                                               MeasurementForm::Reduced)) +
                                           "'");
  }
  if (expected && *expected != set.form) {
    throw Error(ErrorCode::ParseError, std::string("measurement file holds the ") +
                                           to_string(set.form) + " form, expected " +
                                           to_string(*expected));
  }
  if (lines.size() != 2) {
    throw Error(ErrorCode::ParseError, "expected exactly one data row after the header, found " +
                                           std::to_string(lines.size() - 1));
  }
  const auto fields = split(lines[1], ',');
  if (fields.size() != row_count(set.form)) {
    throw Error(ErrorCode::ParseError, "data row has " + std::to_string(fields.size()) +
                                           " fields, expected " +
                                           std::to_string(row_count(set.form)));
  }
  set.values.resize(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i) {
    set.values(static_cast<Eigen::Index>(i)) = parse_decimal(fields[i]);
  }
  return set;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace orthocal
