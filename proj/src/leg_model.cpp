#include "orthocal/leg_model.hpp"

#include <cmath>
#include <sstream>

#include "orthocal/error.hpp"

namespace orthocal {

Axis gauge_axis(Axis leg, GaugeDirection dir) noexcept {
  // Transverse axes in increasing order, skipping the leg's own axis.
  static constexpr Axis kTable[3][2] = {
      {Axis::Y, Axis::Z}, {Axis::X, Axis::Z}, {Axis::X, Axis::Y}};
  return kTable[index(leg)][static_cast<int>(dir)];
}

LegLine leg_line(Axis axis, const CartesianPoint& tcp, double actual_joint) {
  LegLine leg{axis, {}, tcp};
  leg.joint_end[axis] = actual_joint;
  return leg;
}

DeviationPair transverse_deviation(const LegLine& leg, double station) {
  const double j = leg.joint_end[leg.axis];
  const double t = leg.tcp_end[leg.axis];
  const double extent = j - t;
  const double scale = std::max(1.0, leg.length());
  if (std::abs(extent) < 1e-9 * scale) {
    throw Error(ErrorCode::DegenerateLeg, "leg is perpendicular to its longitudinal axis");
  }
  if (!(std::min(j, t) < station && station < std::max(j, t))) {
    std::ostringstream why;
    why << "gauge station " << station << " mm is outside the " << axis_name(leg.axis)
        << "-leg span [" << std::min(j, t) << ", " << std::max(j, t) << "]";
    throw Error(ErrorCode::StationOutOfRange, why.str());
  }
  // Fraction of the way from the TCP end to the joint end.
  const double u = (station - t) / extent;
  const auto at = [&](Axis a) { return leg.tcp_end[a] + u * (leg.joint_end[a] - leg.tcp_end[a]); };
  return {at(gauge_axis(leg.axis, GaugeDirection::First)),
          at(gauge_axis(leg.axis, GaugeDirection::Second))};
}

DeviationPair linearized_deviation_delta(Axis axis, PostureKind kind, double alpha,
                                         const JointOffsets& d) {
  // alpha already carries the posture: positive for max, negative for min.
  if (kind == PostureKind::Zero) return {};
  const double s = std::sin(alpha);
  const double c = (0.5 + s) * std::tan(alpha);
  const double along = d[axis];
  return {c * along + s * d[gauge_axis(axis, GaugeDirection::First)],
          c * along + s * d[gauge_axis(axis, GaugeDirection::Second)]};
}

DeviationPair exact_gauge_readings(Axis axis, PostureKind posture, const Geometry& g,
                                   const JointOffsets& offsets) {
  const JointVector commanded = test_posture(axis, posture, g).joints;
  const CartesianPoint tcp = direct_kinematics(commanded, offsets, g.leg_length);
  const LegLine leg = leg_line(axis, tcp, commanded[axis] + offsets[axis]);
  return transverse_deviation(leg, nominal_station(g));
}

DeviationPair exact_deviation_delta(Axis axis, PostureKind kind, const Geometry& g,
                                    const JointOffsets& offsets) {
  if (kind == PostureKind::Zero) return {};
  const DeviationPair zero = exact_gauge_readings(axis, PostureKind::Zero, g, offsets);
  const DeviationPair test = exact_gauge_readings(axis, kind, g, offsets);
  return {test.first - zero.first, test.second - zero.second};
}

}  // namespace orthocal
