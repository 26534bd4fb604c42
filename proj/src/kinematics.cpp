#include "orthocal/kinematics.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "orthocal/error.hpp"

namespace orthocal {

namespace {

constexpr double kSingularFraction = 1e-9;

double sq(double v) { return v * v; }

}  // namespace

std::array<double, 3> closure_residual(const CartesianPoint& p, const JointVector& q,
                                       double L) {
  const double px2 = sq(p.x), py2 = sq(p.y), pz2 = sq(p.z), L2 = sq(L);
  return {sq(p.x - q.x) + py2 + pz2 - L2,
          px2 + sq(p.y - q.y) + pz2 - L2,
          px2 + py2 + sq(p.z - q.z) - L2};
}

JointVector inverse_kinematics(const CartesianPoint& p, const JointOffsets& offsets,
                               const ConfigIndices& branch, double L) {
  JointVector rho;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    const double radicand = sq(L) - sq(p[j]) - sq(p[k]);
    if (radicand < 0.0) {
      throw Error(ErrorCode::UnreachablePoint,
                  std::string("point outside the reach of the ") +
                      axis_name(static_cast<Axis>(i)) + "-leg");
    }
    rho[i] = p[i] + branch[i] * std::sqrt(radicand) - offsets[i];
  }
  return rho;
}

// Subtracting the closure equations pairwise gives p_i q_i - q_i^2/2 = t for
// every leg, hence p_i = q_i/2 + t/q_i. Substituting into any one closure
// equation:
//   t^2 * sum(1/q_i^2) + t + sum(q_i^2)/4 - L^2 = 0.
// The sign is flipped so that the assembly branch (t < 0 at mechanical zero,
// t = -L^2/2 there) is the "+sqrt" root.
DirectKinematicsQuadratic direct_kinematics_quadratic(const JointVector& q, double L) {
  double inv_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    inv_sum += 1.0 / sq(q[i]);
    sq_sum += sq(q[i]);
  }
  return {-inv_sum, -1.0, sq(L) - 0.25 * sq_sum};
}

CartesianPoint direct_kinematics(const JointVector& commanded, const JointOffsets& offsets,
                                 double L) {
  const JointVector q = commanded + offsets;
  for (std::size_t i = 0; i < 3; ++i) {
    if (q[i] == 0.0) {
      throw Error(ErrorCode::SingularJoint,
                  std::string("actual ") + axis_name(static_cast<Axis>(i)) +
                      "-joint coordinate is zero");
    }
  }
  const auto quad = direct_kinematics_quadratic(q, L);
  const double disc = quad.discriminant();
  if (!(disc >= 0.0)) {
    throw Error(ErrorCode::NoRealSolution, "legs cannot close for the given joint coordinates");
  }
  const double t = (-quad.b + std::sqrt(disc)) / (2.0 * quad.a);
  CartesianPoint p;
  for (std::size_t i = 0; i < 3; ++i) p[i] = 0.5 * q[i] + t / q[i];
  return p;
}

Matrix3 inverse_jacobian(const CartesianPoint& p, const JointVector& q, double L) {
  Matrix3 m = Matrix3::Identity();
  for (std::size_t i = 0; i < 3; ++i) {
    const double denom = p[i] - q[i];
    if (std::abs(denom) < kSingularFraction * L) {
      throw Error(ErrorCode::SingularPosture,
                  std::string(1, axis_name(static_cast<Axis>(i))) +
                      "-leg is perpendicular to its rail");
    }
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = p[j] / denom;
    }
  }
  return m;
}

Matrix3 jacobian(const CartesianPoint& p, const JointVector& q, double L,
                 double condition_limit) {
  const Matrix3 inv = inverse_jacobian(p, q, L);
  const Eigen::JacobiSVD<Matrix3> svd(inv);
  const Eigen::Vector3d s = svd.singularValues();
  if (!(s(2) > 0.0) || s(0) / s(2) > condition_limit) {
    throw Error(ErrorCode::SingularPosture, "inverse Jacobian is numerically singular");
  }
  return inv.inverse();
}

const char* to_string(PostureKind kind) noexcept {
  switch (kind) {
    case PostureKind::Zero: return "zero";
    case PostureKind::Max: return "max";
    case PostureKind::Min: return "min";
  }
  return "?";
}

Posture test_posture(Axis axis, PostureKind kind, const Geometry& g) {
  const double L = g.leg_length;
  if (kind == PostureKind::Zero) return {{0.0, 0.0, 0.0}, {L, L, L}};

  const double alpha = kind == PostureKind::Max ? g.alpha_max() : g.alpha_min();
  const double s = std::sin(alpha), c = std::cos(alpha);
  Posture out;
  for (std::size_t i = 0; i < 3; ++i) {
    const bool along = i == index(axis);
    out.tcp[i] = along ? L * s : 0.0;
    out.joints[i] = along ? L * (1.0 + s) : L * c;
  }
  return out;
}

CartesianPoint sample_workspace(const Geometry& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(g.rho_min, g.rho_max);
  CartesianPoint p;
  p.x = u(rng);
  p.y = u(rng);
  p.z = u(rng);
  return p;
}

}  // namespace orthocal
