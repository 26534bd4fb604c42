#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthocal/identification.hpp"
#include "orthocal/virtual_rig.hpp"

namespace orthocal {

/// Everything a tool invocation needs. Loaded from a flat `key=value` file;
/// `#` starts a comment line. Unknown keys are rejected.
///
///   L_mm, rho_min_mm, rho_max_mm           geometry
///   alpha1_rad, alpha2_rad                 posture-angle override (max, min)
///   offset_x_mm, offset_y_mm, offset_z_mm  true offsets of the virtual rig
///   noise_std_mm, resolution_mm, repetitions, seed, offset_bound_frac
///   form (full|reduced), in, out, trials, tolerance_mm
struct RunConfig {
  Geometry geometry;
  std::optional<double> alpha_max_override;
  std::optional<double> alpha_min_override;
  JointOffsets true_offsets;
  double noise_std = 0.007;
  double gauge_resolution = 0.010;
  int repetitions = 3;
  std::uint64_t seed = 1;
  double offset_bound_fraction = kDefaultOffsetBoundFraction;
  MeasurementForm form = MeasurementForm::Reduced;
  std::string in_path;
  std::string out_path;
  int trials = 1000;
  double tolerance = 0.03;

  static const std::vector<std::string_view>& keys();

  /// Throws ConfigError for an unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);

  static RunConfig parse(std::string_view text);
  /// Throws IoError when the file cannot be read.
  static RunConfig load(const std::string& path);

  void validate() const;

  bool has_angle_override() const { return alpha_max_override || alpha_min_override; }

  /// Override when present, otherwise derived from the geometry.
  PostureAngles angles() const;

  RigConfig rig() const;
};

MeasurementForm parse_form(std::string_view text);

}  // namespace orthocal
