#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "orthocal/identification.hpp"

namespace orthocal {

/// Shortest plain-decimal text that parses back to exactly `value`.
std::string format_decimal(double value);

/// Parses a full decimal field; a leading '+' is accepted. Throws ParseError.
double parse_decimal(std::string_view text);

struct MeasurementSet {
  MeasurementForm form = MeasurementForm::Reduced;
  MeasurementVector values;
};

/// Header line naming the columns of `form`, comma separated.
std::string measurement_header(MeasurementForm form);

/// CSV text: optional `# ` comment lines, the header, one data row.
std::string write_measurements(const MeasurementSet& set, std::string_view comment = {});

/// Parses CSV text. The form is taken from the header; when `expected` is set
/// the header must match it. Throws ParseError.
MeasurementSet read_measurements(std::string_view text,
                                 std::optional<MeasurementForm> expected = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace orthocal
