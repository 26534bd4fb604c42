#include "orthocal/types.hpp"

#include <sstream>

#include "orthocal/error.hpp"

namespace orthocal {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnreachablePoint: return "UnreachablePoint";
    case ErrorCode::SingularJoint: return "SingularJoint";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::SingularPosture: return "SingularPosture";
    case ErrorCode::DegenerateLeg: return "DegenerateLeg";
    case ErrorCode::StationOutOfRange: return "StationOutOfRange";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnreachablePoint:
    case ErrorCode::SingularJoint:
    case ErrorCode::NoRealSolution:
    case ErrorCode::SingularPosture:
    case ErrorCode::DegenerateLeg:
    case ErrorCode::StationOutOfRange:
    case ErrorCode::RankDeficient:
      return true;
    default:
      return false;
  }
}

char axis_name(Axis a) noexcept { return "xyz"[index(a)]; }

void Geometry::validate() const {
  std::ostringstream why;
  if (!(leg_length > 0.0) || !std::isfinite(leg_length)) {
    why << "leg length must be positive (got " << leg_length << ")";
  } else if (!(rho_min < 0.0) || !(rho_max > 0.0)) {
    why << "joint travel must satisfy rho_min < 0 < rho_max (got " << rho_min << ", " << rho_max
        << ")";
  } else if (!(-rho_min < leg_length) || !(rho_max < leg_length)) {
    why << "joint travel must be shorter than the leg length";
  } else {
    return;
  }
  throw Error(ErrorCode::ConfigError, why.str());
}

bool Geometry::within_travel(const JointVector& q) const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (q[i] < leg_length + rho_min || q[i] > leg_length + rho_max) return false;
  }
  return true;
}

void check_offsets(const JointOffsets& offsets, const Geometry& g, double bound_fraction) {
  const double bound = bound_fraction * g.leg_length;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(offsets[i]) || std::abs(offsets[i]) > bound) {
      std::ostringstream why;
      why << "offset along " << axis_name(static_cast<Axis>(i)) << " (" << offsets[i]
          << " mm) exceeds the linearisation bound of " << bound << " mm";
      throw Error(ErrorCode::InvalidArgument, why.str());
    }
  }
}

}  // namespace orthocal
