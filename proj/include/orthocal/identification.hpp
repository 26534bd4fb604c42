#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "orthocal/kinematics.hpp"
#include "orthocal/leg_model.hpp"
#include "orthocal/types.hpp"

namespace orthocal {

enum class MeasurementForm { Full, Reduced };

const char* to_string(MeasurementForm form) noexcept;
std::size_t row_count(MeasurementForm form) noexcept;

/// Posture angles of the max (alpha_max > 0) and min (alpha_min < 0) test postures.
struct PostureAngles {
  double alpha_max = 0.0;
  double alpha_min = 0.0;

  static PostureAngles from(const Geometry& g) { return {g.alpha_max(), g.alpha_min()}; }
};

/// One row of a measurement set: which leg, which gauge and, for the full
/// form, which posture. The reduced form holds max-minus-min differences.
struct MeasurementRow {
  Axis leg;
  Axis gauge;       // base-frame axis the gauge reads along
  PostureKind kind; // Max or Min for the full form, Zero marks a max-min difference
  std::string_view name;
};

/// Reduced order: dx_y, dx_z, dy_x, dy_z, dz_x, dz_y. Name "da_b" is the
/// a-deviation of the b-leg.
const std::array<MeasurementRow, 6>& reduced_layout();

/// Full order, pairs of legs sharing a plane, max then min:
/// dx_y_max, dy_x_max, dx_y_min, dy_x_min, dy_z_max, dz_y_max, dy_z_min,
/// dz_y_min, dx_z_max, dz_x_max, dx_z_min, dz_x_min.
const std::array<MeasurementRow, 12>& full_layout();

std::vector<MeasurementRow> layout(MeasurementForm form);

using DesignMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using MeasurementVector = Eigen::VectorXd;

/// 12x3 system: row for gauge g on leg l at posture i has
/// c_i = (0.5 + sin a_i) tan a_i on column l and b_i = sin a_i on column g.
DesignMatrix design_matrix_full(const PostureAngles& angles);

/// 6x3 system of max-minus-min differences (B = b1 - b2, C = c1 - c2).
DesignMatrix design_matrix_reduced(const PostureAngles& angles);

DesignMatrix design_matrix(MeasurementForm form, const PostureAngles& angles);

/// Fixed 6x12 map taking a full measurement vector to the reduced one.
Eigen::Matrix<double, 6, 12> reduction_operator();

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-10;

Eigen::Index numerical_rank(const DesignMatrix& a);

struct CalibrationResult {
  JointOffsets offsets;
  Eigen::VectorXd residuals;
  double sigma_hat = 0.0;
  double rms_before = 0.0;
  double rms_after_predicted = 0.0;
};

/// Least-squares offsets minimising |m - A d|, via Householder QR.
/// Throws RankDeficient when rank(A) < 3 and InvalidArgument on shape mismatch
/// or fewer than four rows.
CalibrationResult solve_offsets(const DesignMatrix& a, const MeasurementVector& m);

/// m - A d: deviations the model expects to remain after compensating `offsets`.
Eigen::VectorXd predict_improvement(const DesignMatrix& a, const MeasurementVector& m,
                                    const JointOffsets& offsets);

/// Root mean square. Throws EmptyVector for an empty input.
double rms(std::span<const double> v);
double rms(const Eigen::VectorXd& v);

/// Deviations the linear model predicts for the given offsets, in `form` order.
MeasurementVector predicted_measurements(MeasurementForm form, const PostureAngles& angles,
                                         const JointOffsets& offsets);

}  // namespace orthocal
