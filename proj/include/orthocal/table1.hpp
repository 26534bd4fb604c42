#pragma once

#include <array>
#include <string_view>

#include "orthocal/identification.hpp"

namespace orthocal::table1 {

/// A published row pair: measured max-minus-min deviations of the prototype
/// (dx_y, dx_z, dy_x, dy_z, dz_x, dz_y, mm), the model's expected residual
/// after compensation, and the printed r.m.s. of each.
struct Experiment {
  std::string_view label;
  std::array<double, 6> measured;
  double measured_rms;
  std::array<double, 6> expected;
  double expected_rms;
};

/// Experiments #1 (initial settings), #2 (after mechanical tuning) and #3
/// (after calibration).
const std::array<Experiment, 3>& experiments();

MeasurementVector to_vector(const std::array<double, 6>& row);

struct AngleFit {
  PostureAngles angles;
  double mismatch = 0.0;       // |predicted residual - published expected|, mm
  double predicted_rms = 0.0;  // rms of the predicted residual, mm
};

struct FitOptions {
  double max_abs_angle = 1.3962634015954636;  // 80 deg
  double grid_step = 0.008726646259971648;    // 0.5 deg
  double final_step = 1e-9;
};

/// Posture angles for which the reduced least-squares residual of `e.measured`
/// best matches `e.expected`. Coarse grid over alpha_max in (0, max], alpha_min
/// in [-max, 0), then compass-search refinement from the best grid node.
AngleFit fit_angles(const Experiment& e, const FitOptions& options = {});

}  // namespace orthocal::table1
