#include "slipkit/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace slipkit {

double wrap_angle(double rad) {
  double r = std::remainder(rad, 2.0 * kPi);
  if (r <= -kPi) {
    r += 2.0 * kPi;
  }
  return r;
}

BodyVelocity diff_drive_body_velocity(const RobotGeometry& geom, const WheelSpeeds& wheels) {
  const double r = geom.wheel_radius_m;
  const double b = geom.track_width_m;
  return BodyVelocity{
      r * (wheels.left_rad_s + wheels.right_rad_s) / 2.0,
      0.0,
      r * (wheels.right_rad_s - wheels.left_rad_s) / b,
  };
}

PlanarState propagate_state(const PlanarState& state, const BodyVelocity& v, double dt_s) {
  const double c = std::cos(state.yaw_rad);
  const double s = std::sin(state.yaw_rad);
  return PlanarState{
      state.x_m + (c * v.vx_m_s - s * v.vy_m_s) * dt_s,
      state.y_m + (s * v.vx_m_s + c * v.vy_m_s) * dt_s,
      wrap_angle(state.yaw_rad + v.omega_rad_s * dt_s),
  };
}

SlipVelocity observed_slip(const BodyVelocity& commanded, const BodyVelocity& measured) {
  return SlipVelocity{
      commanded.vx_m_s - measured.vx_m_s,
      commanded.vy_m_s - measured.vy_m_s,
      commanded.omega_rad_s - measured.omega_rad_s,
  };
}

BodyVelocity body_velocity_from_poses(const PlanarState& prev, const PlanarState& next,
                                      double dt_s) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("body_velocity_from_poses: dt must be positive");
  }
  const double dx = next.x_m - prev.x_m;
  const double dy = next.y_m - prev.y_m;
  const double dyaw = wrap_angle(next.yaw_rad - prev.yaw_rad);
  const double c = std::cos(prev.yaw_rad);
  const double s = std::sin(prev.yaw_rad);
  return BodyVelocity{
      (c * dx + s * dy) / dt_s,
      (-s * dx + c * dy) / dt_s,
      dyaw / dt_s,
  };
}

}  // namespace slipkit
