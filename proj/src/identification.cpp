#include "orthocal/identification.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "orthocal/error.hpp"

namespace orthocal {

namespace {

using enum Axis;

constexpr PostureKind kDiff = PostureKind::Zero;

constexpr std::array<MeasurementRow, 6> kReduced{{
    {Y, X, kDiff, "dx_y"},
    {Z, X, kDiff, "dx_z"},
    {X, Y, kDiff, "dy_x"},
    {Z, Y, kDiff, "dy_z"},
    {X, Z, kDiff, "dz_x"},
    {Y, Z, kDiff, "dz_y"},
}};

constexpr std::array<MeasurementRow, 12> kFull{{
    {Y, X, PostureKind::Max, "dx_y_max"},
    {X, Y, PostureKind::Max, "dy_x_max"},
    {Y, X, PostureKind::Min, "dx_y_min"},
    {X, Y, PostureKind::Min, "dy_x_min"},
    {Z, Y, PostureKind::Max, "dy_z_max"},
    {Y, Z, PostureKind::Max, "dz_y_max"},
    {Z, Y, PostureKind::Min, "dy_z_min"},
    {Y, Z, PostureKind::Min, "dz_y_min"},
    {Z, X, PostureKind::Max, "dx_z_max"},
    {X, Z, PostureKind::Max, "dz_x_max"},
    {Z, X, PostureKind::Min, "dx_z_min"},
    {X, Z, PostureKind::Min, "dz_x_min"},
}};

struct Coefficients {
  double b;  // on the gauge direction's offset
  double c;  // on the probed leg's own offset
};

Coefficients coefficients(double alpha) {
  const double s = std::sin(alpha);
  return {s, (0.5 + s) * std::tan(alpha)};
}

void check_angles(const PostureAngles& angles) {
  constexpr double kHalfPi = 1.5707963267948966;
  for (double a : {angles.alpha_max, angles.alpha_min}) {
    if (!std::isfinite(a) || !(std::abs(a) < kHalfPi)) {
      std::ostringstream why;
      why << "posture angle " << a << " rad is outside (-pi/2, pi/2)";
      throw Error(ErrorCode::InvalidArgument, why.str());
    }
  }
}

}  // namespace

const char* to_string(MeasurementForm form) noexcept {
  return form == MeasurementForm::Full ? "full" : "reduced";
}

std::size_t row_count(MeasurementForm form) noexcept {
  return form == MeasurementForm::Full ? kFull.size() : kReduced.size();
}

const std::array<MeasurementRow, 6>& reduced_layout() { return kReduced; }
const std::array<MeasurementRow, 12>& full_layout() { return kFull; }

std::vector<MeasurementRow> layout(MeasurementForm form) {
  if (form == MeasurementForm::Full) return {kFull.begin(), kFull.end()};
  return {kReduced.begin(), kReduced.end()};
}

DesignMatrix design_matrix_full(const PostureAngles& angles) {
  check_angles(angles);
  const Coefficients hi = coefficients(angles.alpha_max);
  const Coefficients lo = coefficients(angles.alpha_min);
  DesignMatrix a = DesignMatrix::Zero(kFull.size(), 3);
  for (std::size_t r = 0; r < kFull.size(); ++r) {
    const auto& row = kFull[r];
    const Coefficients& k = row.kind == PostureKind::Max ? hi : lo;
    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index(row.leg))) = k.c;
    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index(row.gauge))) = k.b;
  }
  return a;
}

DesignMatrix design_matrix_reduced(const PostureAngles& angles) {
  check_angles(angles);
  const Coefficients hi = coefficients(angles.alpha_max);
  const Coefficients lo = coefficients(angles.alpha_min);
  const double big_b = hi.b - lo.b, big_c = hi.c - lo.c;
  DesignMatrix a = DesignMatrix::Zero(kReduced.size(), 3);
  for (std::size_t r = 0; r < kReduced.size(); ++r) {
    const auto& row = kReduced[r];
    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index(row.leg))) = big_c;
    a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index(row.gauge))) = big_b;
  }
  return a;
}

DesignMatrix design_matrix(MeasurementForm form, const PostureAngles& angles) {
  return form == MeasurementForm::Full ? design_matrix_full(angles)
                                       : design_matrix_reduced(angles);
}

Eigen::Matrix<double, 6, 12> reduction_operator() {
  Eigen::Matrix<double, 6, 12> p = Eigen::Matrix<double, 6, 12>::Zero();
  for (std::size_t r = 0; r < kReduced.size(); ++r) {
    for (std::size_t f = 0; f < kFull.size(); ++f) {
      if (kFull[f].leg != kReduced[r].leg || kFull[f].gauge != kReduced[r].gauge) continue;
      p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) =
          kFull[f].kind == PostureKind::Max ? 1.0 : -1.0;
    }
  }
  return p;
}

Eigen::Index numerical_rank(const DesignMatrix& a) {
  if (a.rows() == 0) return 0;
  const Eigen::JacobiSVD<DesignMatrix> svd(a);
  const auto& s = svd.singularValues();
  if (!(s(0) > 0.0)) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > kRankTolerance * s(0)) ++rank;
  }
  return rank;
}

CalibrationResult solve_offsets(const DesignMatrix& a, const MeasurementVector& m) {
  if (a.rows() != m.size()) {
    std::ostringstream why;
    why << "design matrix has " << a.rows() << " rows but " << m.size()
        << " measurements were given";
    throw Error(ErrorCode::InvalidArgument, why.str());
  }
  if (a.rows() <= 3) {
    throw Error(ErrorCode::InvalidArgument, "at least four measurements are required");
  }
  if (!m.allFinite() || !a.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "non-finite entry in the calibration system");
  }
  if (numerical_rank(a) < 3) {
    throw Error(ErrorCode::RankDeficient,
                "design matrix is rank deficient; offsets are not identifiable from these "
                "postures");
  }

  const Eigen::HouseholderQR<DesignMatrix> qr(a);
  const Eigen::Vector3d d = qr.solve(m);

  CalibrationResult out;
  out.offsets = JointOffsets::from(d);
  out.residuals = m - a * d;
  const auto rows = static_cast<double>(a.rows());
  out.sigma_hat = std::sqrt(out.residuals.squaredNorm() / (rows - 3.0));
  out.rms_before = rms(m);
  out.rms_after_predicted = rms(out.residuals);
  return out;
}

Eigen::VectorXd predict_improvement(const DesignMatrix& a, const MeasurementVector& m,
                                    const JointOffsets& offsets) {
  if (a.rows() != m.size()) {
    throw Error(ErrorCode::InvalidArgument, "design matrix and measurement sizes differ");
  }
  return m - a * offsets.vec();
}

double rms(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorCode::EmptyVector, "rms of an empty vector");
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double rms(const Eigen::VectorXd& v) {
  return rms(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

MeasurementVector predicted_measurements(MeasurementForm form, const PostureAngles& angles,
                                         const JointOffsets& offsets) {
  return design_matrix(form, angles) * offsets.vec();
}

}  // namespace orthocal
