#include "orthocal/config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "orthocal/error.hpp"
#include "orthocal/measurement_io.hpp"

namespace orthocal {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double as_double(std::string_view key, std::string_view value) {
  try {
    return parse_decimal(value);
  } catch (const Error&) {
    throw Error(ErrorCode::ConfigError,
                std::string(key) + ": not a number: '" + std::string(value) + "'");
  }
}

template <class Int>
Int as_integer(std::string_view key, std::string_view value) {
  Int v{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
    throw Error(ErrorCode::ConfigError,
                std::string(key) + ": not an integer: '" + std::string(value) + "'");
  }
  return v;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string_view, Setter>& setters() {
  static const std::map<std::string_view, Setter> table{
      {"L_mm", [](RunConfig& c, auto k, auto v) { c.geometry.leg_length = as_double(k, v); }},
      {"rho_min_mm", [](RunConfig& c, auto k, auto v) { c.geometry.rho_min = as_double(k, v); }},
      {"rho_max_mm", [](RunConfig& c, auto k, auto v) { c.geometry.rho_max = as_double(k, v); }},
      {"alpha1_rad", [](RunConfig& c, auto k, auto v) { c.alpha_max_override = as_double(k, v); }},
      {"alpha2_rad", [](RunConfig& c, auto k, auto v) { c.alpha_min_override = as_double(k, v); }},
      {"offset_x_mm", [](RunConfig& c, auto k, auto v) { c.true_offsets.x = as_double(k, v); }},
      {"offset_y_mm", [](RunConfig& c, auto k, auto v) { c.true_offsets.y = as_double(k, v); }},
      {"offset_z_mm", [](RunConfig& c, auto k, auto v) { c.true_offsets.z = as_double(k, v); }},
      {"noise_std_mm", [](RunConfig& c, auto k, auto v) { c.noise_std = as_double(k, v); }},
      {"resolution_mm",
       [](RunConfig& c, auto k, auto v) { c.gauge_resolution = as_double(k, v); }},
      {"repetitions", [](RunConfig& c, auto k, auto v) { c.repetitions = as_integer<int>(k, v); }},
      {"seed", [](RunConfig& c, auto k, auto v) { c.seed = as_integer<std::uint64_t>(k, v); }},
      {"offset_bound_frac",
       [](RunConfig& c, auto k, auto v) { c.offset_bound_fraction = as_double(k, v); }},
      {"form", [](RunConfig& c, auto, auto v) { c.form = parse_form(v); }},
      {"in", [](RunConfig& c, auto, auto v) { c.in_path = std::string(v); }},
      {"out", [](RunConfig& c, auto, auto v) { c.out_path = std::string(v); }},
      {"trials", [](RunConfig& c, auto k, auto v) { c.trials = as_integer<int>(k, v); }},
      {"tolerance_mm", [](RunConfig& c, auto k, auto v) { c.tolerance = as_double(k, v); }},
  };
  return table;
}

}  // namespace

MeasurementForm parse_form(std::string_view text) {
  if (text == "full") return MeasurementForm::Full;
  if (text == "reduced") return MeasurementForm::Reduced;
  throw Error(ErrorCode::ConfigError,
              "form must be 'full' or 'reduced', got '" + std::string(text) + "'");
}

const std::vector<std::string_view>& RunConfig::keys() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [k, _] : setters()) out.push_back(k);
    return out;
  }();
  return names;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const auto it = setters().find(trim(key));
  if (it == setters().end()) {
    throw Error(ErrorCode::ConfigError, "unknown config key '" + std::string(key) + "'");
  }
  it->second(*this, it->first, trim(value));
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::size_t start = 0, line_no = 0;
  while (start <= text.size()) {
    ++line_no;
    const auto pos = text.find('\n', start);
    const auto line = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::ConfigError,
                    "line " + std::to_string(line_no) + ": expected key=value");
      }
      cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) { return parse(read_file(path)); }

void RunConfig::validate() const {
  geometry.validate();
  rig().validate();
  const PostureAngles a = angles();
  if (!(a.alpha_max > -1.5707963267948966 && a.alpha_max < 1.5707963267948966) ||
      !(a.alpha_min > -1.5707963267948966 && a.alpha_min < 1.5707963267948966)) {
    throw Error(ErrorCode::ConfigError, "posture angles must lie in (-pi/2, pi/2)");
  }
  if (trials < 1) throw Error(ErrorCode::ConfigError, "trials must be at least 1");
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::ConfigError, "tolerance must be non-negative");
}

PostureAngles RunConfig::angles() const {
  PostureAngles a = PostureAngles::from(geometry);
  if (alpha_max_override) a.alpha_max = *alpha_max_override;
  if (alpha_min_override) a.alpha_min = *alpha_min_override;
  return a;
}

RigConfig RunConfig::rig() const {
  RigConfig r;
  r.geometry = geometry;
  r.true_offsets = true_offsets;
  r.gauge_resolution = gauge_resolution;
  r.noise_std = noise_std;
  r.repetitions = repetitions;
  r.seed = seed;
  r.offset_bound_fraction = offset_bound_fraction;
  return r;
}

}  // namespace orthocal
