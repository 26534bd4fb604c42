#pragma once

// Test-only oracles. Nothing here calls the routine it is used to check.

#include <cmath>
#include <random>

#include "orthocal/kinematics.hpp"
#include "orthocal/types.hpp"

namespace orthocal::testing {

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

/// dq/dp by central differences of the inverse kinematics (zero offsets, prototype branch).
inline Matrix3 fd_inverse_jacobian(const CartesianPoint& p, double L, double h) {
  Matrix3 out;
  for (int j = 0; j < 3; ++j) {
    CartesianPoint plus = p, minus = p;
    plus[static_cast<std::size_t>(j)] += h;
    minus[static_cast<std::size_t>(j)] -= h;
    const auto qp = inverse_kinematics(plus, {}, kPrototypeBranch, L).vec();
    const auto qm = inverse_kinematics(minus, {}, kPrototypeBranch, L).vec();
    out.col(j) = (qp - qm) / (2.0 * h);
  }
  return out;
}

/// dp/dq by central differences of the direct kinematics over actual joints.
inline Matrix3 fd_jacobian(const JointVector& q, double L, double h) {
  Matrix3 out;
  for (int j = 0; j < 3; ++j) {
    JointVector plus = q, minus = q;
    plus[static_cast<std::size_t>(j)] += h;
    minus[static_cast<std::size_t>(j)] -= h;
    const auto pp = direct_kinematics(plus, {}, L).vec();
    const auto pm = direct_kinematics(minus, {}, L).vec();
    out.col(j) = (pp - pm) / (2.0 * h);
  }
  return out;
}

/// Relative difference with the matrix norm as scale.
inline double rel_diff(const Matrix3& a, const Matrix3& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

inline JointOffsets random_offsets(std::mt19937_64& rng, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  JointOffsets d;
  d.x = u(rng);
  d.y = u(rng);
  d.z = u(rng);
  return d;
}

}  // namespace orthocal::testing
