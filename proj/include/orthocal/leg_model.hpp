#pragma once

#include <array>

#include "orthocal/kinematics.hpp"
#include "orthocal/types.hpp"

namespace orthocal {

/// A leg reduced to the segment between the centre of its prismatic joint and the TCP.
struct LegLine {
  Axis axis;
  CartesianPoint joint_end;
  CartesianPoint tcp_end;

  double length() const { return (tcp_end.vec() - joint_end.vec()).norm(); }
};

/// Which of the two transverse gauges on a leg. The x-leg is probed along y
/// then z, the y-leg along x then z, the z-leg along x then y.
enum class GaugeDirection { First = 0, Second = 1 };

/// Base-frame axis a gauge on `leg` reads along.
Axis gauge_axis(Axis leg, GaugeDirection dir) noexcept;

/// Transverse leg coordinates at a gauge station, one per gauge, mm.
struct DeviationPair {
  double first = 0.0;
  double second = 0.0;

  double operator[](GaugeDirection d) const { return d == GaugeDirection::First ? first : second; }
};

LegLine leg_line(Axis axis, const CartesianPoint& tcp, double actual_joint);

/// Transverse coordinates of the leg line where its longitudinal coordinate
/// equals `station`. Throws DegenerateLeg if the leg has no longitudinal extent
/// and StationOutOfRange unless the station lies strictly between the ends.
DeviationPair transverse_deviation(const LegLine& leg, double station);

/// First-order change of the two gauge readings between the mechanical zero
/// and the max/min posture along `axis`, for the posture angle `alpha`:
///   (0.5 + sin a) tan a * d_axis + sin a * d_gauge.
DeviationPair linearized_deviation_delta(Axis axis, PostureKind kind, double alpha,
                                         const JointOffsets& offsets);

/// Gauge station used by the protocol: the nominal leg midpoint, L/2 on the leg's axis.
inline double nominal_station(const Geometry& g) { return 0.5 * g.leg_length; }

/// Same quantity as linearized_deviation_delta, computed without linearisation
/// from exact direct kinematics and the leg lines at a fixed station.
DeviationPair exact_deviation_delta(Axis axis, PostureKind kind, const Geometry& g,
                                    const JointOffsets& offsets);

/// Gauge reading (absolute transverse coordinate) for the actual posture
/// reached when the nominal test posture is commanded under `offsets`.
DeviationPair exact_gauge_readings(Axis axis, PostureKind posture, const Geometry& g,
                                   const JointOffsets& offsets);

}  // namespace orthocal
