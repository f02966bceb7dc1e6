#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "slipkit/kinematics.hpp"
#include "slipkit/powertrain.hpp"
#include "slipkit/protocol.hpp"
#include "slipkit/rng.hpp"
#include "slipkit/session_log.hpp"
#include "slipkit/slip_blr.hpp"

namespace slipkit {

/// Ground-truth slip law of the simulated terrain: per-dimension weights on
/// the same dynamics-aware basis the learner uses, plus additive Gaussian
/// noise. quadratic_skid_coeff adds a term the learner's basis cannot
/// represent (angular slip proportional to f_omega |f_omega|) to stress-test
/// model bias.
struct TerrainParams {
  Eigen::VectorXd slip_x;      // length 1
  Eigen::VectorXd slip_y;      // length 1
  Eigen::VectorXd slip_omega;  // length 3
  double noise_x_m_s = 0.0;
  double noise_y_m_s = 0.0;
  double noise_omega_rad_s = 0.0;
  std::string label;
  double quadratic_skid_coeff = 0.0;
};

struct SimConfig {
  RobotGeometry geometry;
  SidePair<PowertrainParams> powertrain;
  InputSpace actuator_limits;
  TerrainParams terrain;
  double rate_hz = 20.0;
  std::uint64_t seed = 0;
  double pose_noise_std_m = 0.0;  // optional: additive noise on logged x, y
};

/// Bundled synthetic terrains with increasing slip magnitude and noise.
/// All values are fixtures; nothing here claims to match a physical surface.
TerrainParams terrain_preset(const std::string& name);  // tile|gravel|snow|ice

SimConfig default_sim_config(const std::string& terrain_name, std::uint64_t seed = 0);

/// Ground-truth slip (before noise) for a commanded body velocity.
SlipVelocity terrain_slip(const TerrainParams& terrain, const BodyVelocity& f);

struct SimStepResult {
  PlanarState next_state;
  WheelSpeeds next_wheels;
  WheelSpeeds measured;  // wheel speeds at the start of the step
};

/// One plant step: body velocity is formed from the current wheel speeds via
/// the ideal differential-drive map minus terrain slip (plus noise), the pose
/// advances by one Euler step, and the wheels move toward `effective_command`
/// (the command stream already shifted by the dead time) through the
/// first-order lag, clamped to the actuator limits.
SimStepResult sim_step(const SimConfig& config, const PlanarState& state,
                       const WheelSpeeds& wheel_state, const WheelSpeeds& effective_command,
                       double dt_s, Rng& rng);

/// Executes a command schedule from rest at the schedule rate and returns the
/// full log. Deterministic for a fixed config (seeded noise); wheel dynamics
/// are integrated exactly across dead-time breakpoints.
SessionLog run_session(const SimConfig& config, const Schedule& schedule);

/// WheelPlant adapter over the simulator's wheel dynamics, for input-space
/// characterization.
class SimulatedWheelPlant : public WheelPlant {
 public:
  explicit SimulatedWheelPlant(const SimConfig& config);
  WheelSpeeds apply(const WheelSpeeds& command, double dt_s) override;

 private:
  SimConfig config_;
  WheelSpeeds wheels_;
  double t_s_ = 0.0;
  std::vector<TimedCommand> history_left_;
  std::vector<TimedCommand> history_right_;
};

}  // namespace slipkit
