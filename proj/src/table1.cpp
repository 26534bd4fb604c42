#include "orthocal/table1.hpp"

#include <cmath>
#include <limits>

#include "orthocal/error.hpp"

namespace orthocal::table1 {

namespace {

constexpr std::array<Experiment, 3> kExperiments{{
    {"Experiment #1",
     {+0.52, +1.58, +2.37, -0.25, -0.57, -0.04}, 1.19,
     {-0.94, +0.63, +1.07, -0.84, -0.27, +0.35}, 0.74},
    {"Experiment #2",
     {-0.43, -0.37, +0.42, -0.18, -1.14, -0.70}, 0.62,
     {-0.28, +0.25, +0.21, -0.14, -0.13, +0.09}, 0.20},
    {"Experiment #3",
     {-0.23, +0.27, +0.34, -0.10, -0.09, +0.11}, 0.21,
     {-0.29, +0.23, +0.25, -0.17, -0.10, +0.08}, 0.20},
}};

// +inf for angle pairs that are infeasible or leave the offsets unidentifiable.
double mismatch(const Experiment& e, const PostureAngles& angles, double limit) {
  if (!(angles.alpha_max > 0.0 && angles.alpha_max <= limit && angles.alpha_min < 0.0 &&
        angles.alpha_min >= -limit)) {
    return std::numeric_limits<double>::infinity();
  }
  try {
    const auto result = solve_offsets(design_matrix_reduced(angles), to_vector(e.measured));
    return (result.residuals - to_vector(e.expected)).norm();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

const std::array<Experiment, 3>& experiments() { return kExperiments; }

MeasurementVector to_vector(const std::array<double, 6>& row) {
  MeasurementVector v(6);
  for (std::size_t i = 0; i < row.size(); ++i) v(static_cast<Eigen::Index>(i)) = row[i];
  return v;
}

AngleFit fit_angles(const Experiment& e, const FitOptions& options) {
  const double limit = options.max_abs_angle;
  const double h = options.grid_step;
  if (!(h > 0.0) || !(limit > h)) {
    throw Error(ErrorCode::InvalidArgument, "invalid angle-fit grid");
  }

  AngleFit best{{}, std::numeric_limits<double>::infinity(), 0.0};
  const int n = static_cast<int>(std::floor(limit / h));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const PostureAngles a{i * h, -j * h};
      const double f = mismatch(e, a, limit);
      if (f < best.mismatch) best = {a, f, 0.0};
    }
  }
  if (!std::isfinite(best.mismatch)) {
    throw Error(ErrorCode::RankDeficient, "no identifiable angle pair on the fit grid");
  }

  // Compass search: try the four axis moves, halve the step when none improves.
  double step = h;
  while (step > options.final_step) {
    bool improved = false;
    static constexpr double kMoves[4][2] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (const auto& [dmax, dmin] : kMoves) {
      const PostureAngles a{best.angles.alpha_max + dmax * step,
                            best.angles.alpha_min + dmin * step};
      const double f = mismatch(e, a, limit);
      if (f < best.mismatch) {
        best.angles = a;
        best.mismatch = f;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }

  const auto result = solve_offsets(design_matrix_reduced(best.angles), to_vector(e.measured));
  best.predicted_rms = result.rms_after_predicted;
  return best;
}

}  // namespace orthocal::table1
