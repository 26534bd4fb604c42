#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>

namespace orthocal {

enum class Axis { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Axis, 3> kAllAxes{Axis::X, Axis::Y, Axis::Z};

constexpr std::size_t index(Axis a) noexcept { return static_cast<std::size_t>(a); }
char axis_name(Axis a) noexcept;

// Three millimetre coordinates tagged by meaning so a TCP position cannot be
// passed where a joint vector is expected.
template <class Tag>
struct Triple {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](std::size_t i) noexcept { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](std::size_t i) const noexcept { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](Axis a) noexcept { return (*this)[index(a)]; }
  constexpr double operator[](Axis a) const noexcept { return (*this)[index(a)]; }

  Eigen::Vector3d vec() const { return {x, y, z}; }
  static Triple from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

  friend constexpr bool operator==(const Triple&, const Triple&) = default;
};

struct CartesianTag;
struct JointTag;
struct OffsetTag;

/// TCP position in the base frame (origin at the intersection of the actuator axes), mm.
using CartesianPoint = Triple<CartesianTag>;
/// Absolute prismatic joint coordinates, mm. Mechanical zero is (L, L, L).
using JointVector = Triple<JointTag>;
/// Encoder zero errors, mm. actual joint = commanded + offset.
using JointOffsets = Triple<OffsetTag>;

inline JointVector operator+(const JointVector& q, const JointOffsets& d) {
  return {q.x + d.x, q.y + d.y, q.z + d.z};
}
inline JointVector operator-(const JointVector& q, const JointOffsets& d) {
  return {q.x - d.x, q.y - d.y, q.z - d.z};
}

struct ConfigIndices {
  int sx = 1;
  int sy = 1;
  int sz = 1;

  int operator[](std::size_t i) const noexcept { return i == 0 ? sx : (i == 1 ? sy : sz); }
};

inline constexpr ConfigIndices kPrototypeBranch{1, 1, 1};

using Matrix3 = Eigen::Matrix3d;

/// Leg length and joint travel. The travel limits are displacements from the
/// mechanical zero, so the absolute joint range is [L + rho_min, L + rho_max].
struct Geometry {
  double leg_length = 310.0;
  double rho_min = -73.65;
  double rho_max = 73.65;

  /// Throws Error(ConfigError) when an invariant does not hold.
  void validate() const;

  double alpha_max() const { return std::asin(rho_max / leg_length); }
  double alpha_min() const { return std::asin(rho_min / leg_length); }

  bool within_travel(const JointVector& commanded) const;
};

/// Default sanity bound on |offset| as a fraction of L.
inline constexpr double kDefaultOffsetBoundFraction = 0.05;

/// Throws Error(InvalidArgument) if any |offset| exceeds bound_fraction * L.
void check_offsets(const JointOffsets& offsets, const Geometry& geometry,
                   double bound_fraction = kDefaultOffsetBoundFraction);

}  // namespace orthocal
