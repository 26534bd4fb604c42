#pragma once

#include <array>
#include <random>
#include <utility>

#include "orthocal/types.hpp"

namespace orthocal {

/// Loop-closure residuals of the three legs, mm^2. `actual` is commanded + offsets.
/// All three vanish exactly when (p, actual) is an assembled posture.
std::array<double, 3> closure_residual(const CartesianPoint& p, const JointVector& actual,
                                       double leg_length);

/// Commanded joints that place the TCP at p given encoder offsets.
/// Throws UnreachablePoint if p lies outside the reach of any leg.
JointVector inverse_kinematics(const CartesianPoint& p, const JointOffsets& offsets,
                               const ConfigIndices& branch, double leg_length);

/// Coefficients of a*t^2 + b*t + c = 0 for the auxiliary variable t in
/// p_i = q_i/2 + t/q_i, normalised so that the assembly branch of the
/// prototype is the (-b + sqrt(disc)) / 2a root.
struct DirectKinematicsQuadratic {
  double a;
  double b;
  double c;

  double discriminant() const { return b * b - 4.0 * a * c; }
};

DirectKinematicsQuadratic direct_kinematics_quadratic(const JointVector& actual, double leg_length);

/// TCP position reached by commanded joints under the given offsets.
/// Throws SingularJoint if an actual joint coordinate is zero and
/// NoRealSolution if the legs cannot close.
CartesianPoint direct_kinematics(const JointVector& commanded, const JointOffsets& offsets,
                                 double leg_length);

/// dq = J^-1 dp. Unit diagonal, entry (i, j) = p_j / (p_i - q_i).
/// Throws SingularPosture when a leg is perpendicular to its rail
/// (|p_i - q_i| < 1e-9 L).
Matrix3 inverse_jacobian(const CartesianPoint& p, const JointVector& actual, double leg_length);

inline constexpr double kDefaultJacobianConditionLimit = 1e12;

/// dp = J dq, the numerical inverse of inverse_jacobian.
/// Throws SingularPosture when cond(J^-1) exceeds condition_limit.
Matrix3 jacobian(const CartesianPoint& p, const JointVector& actual, double leg_length,
                 double condition_limit = kDefaultJacobianConditionLimit);

enum class PostureKind { Zero, Max, Min };

const char* to_string(PostureKind kind) noexcept;

struct Posture {
  CartesianPoint tcp;
  JointVector joints;  // commanded, nominal (no offsets)
};

/// Mechanical zero, or the maximum / minimum displacement posture along `axis`.
/// At the x-max posture p = (L sin a, 0, 0), rho = (L(1 + sin a), L cos a, L cos a)
/// with a = asin(rho_max / L); y and z by index permutation, min with rho_min.
Posture test_posture(Axis axis, PostureKind kind, const Geometry& geometry);

/// Uniform TCP sample in the cube [rho_min, rho_max]^3 spanned by the test postures.
CartesianPoint sample_workspace(const Geometry& geometry, std::mt19937_64& rng);

}  // namespace orthocal
