#pragma once

namespace slipkit {

inline constexpr double kPi = 3.14159265358979323846;

/// Wheel (or sprocket) radius and track width of a differential-drive platform.
struct RobotGeometry {
  double wheel_radius_m = 0.0;
  double track_width_m = 0.0;

  bool valid() const { return wheel_radius_m > 0.0 && track_width_m > 0.0; }
};

/// Planar pose in the world frame. Yaw is kept in (-pi, pi].
struct PlanarState {
  double x_m = 0.0;
  double y_m = 0.0;
  double yaw_rad = 0.0;
};

/// Left and right wheel angular velocities.
struct WheelSpeeds {
  double left_rad_s = 0.0;
  double right_rad_s = 0.0;
};

/// Body-frame velocity: longitudinal, lateral, angular.
struct BodyVelocity {
  double vx_m_s = 0.0;
  double vy_m_s = 0.0;
  double omega_rad_s = 0.0;
};

/// Difference between commanded and realized body velocity.
struct SlipVelocity {
  double gx_m_s = 0.0;
  double gy_m_s = 0.0;
  double gomega_rad_s = 0.0;
};

/// Wraps an angle to (-pi, pi].
double wrap_angle(double rad);

/// Ideal differential-drive map from wheel speeds to body velocity.
/// vx = r (wl + wr) / 2, vy = 0, omega = r (wr - wl) / b.
BodyVelocity diff_drive_body_velocity(const RobotGeometry& geom, const WheelSpeeds& wheels);

/// One Euler step of planar dead reckoning: the body velocity is rotated into
/// the world frame and integrated over dt. Yaw is re-wrapped to (-pi, pi].
PlanarState propagate_state(const PlanarState& state, const BodyVelocity& v, double dt_s);

/// Commanded minus measured body velocity, component-wise.
SlipVelocity observed_slip(const BodyVelocity& commanded, const BodyVelocity& measured);

/// Finite-difference body velocity between two consecutive poses, expressed in
/// the body frame of `prev`. The yaw difference is wrapped to (-pi, pi], so a
/// crossing of the +-pi seam yields the short-way rate. Exact inverse of
/// propagate_state for the same dt. Throws std::invalid_argument if dt <= 0.
BodyVelocity body_velocity_from_poses(const PlanarState& prev, const PlanarState& next, double dt_s);

}  // namespace slipkit
