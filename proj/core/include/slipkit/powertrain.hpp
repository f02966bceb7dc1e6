#pragma once

#include <span>
#include <vector>

#include "slipkit/kinematics.hpp"

namespace slipkit {

/// First-order-plus-dead-time wheel servo response.
struct PowertrainParams {
  double time_constant_s = 0.0;  // tau_c > 0
  double dead_time_s = 0.0;      // tau_d >= 0

  bool valid() const { return time_constant_s > 0.0 && dead_time_s >= 0.0; }
};

/// Left/right pair; powertrain parameters are trained independently per side
/// so vehicle asymmetries can be identified.
template <typename T>
struct SidePair {
  T left{};
  T right{};
};

/// One sample of a zero-order-hold command stream.
struct TimedCommand {
  double t_s = 0.0;
  double omega_rad_s = 0.0;
};

/// Zero-order-hold lookup over a time-sorted command stream. Times before the
/// first sample clamp to the first value, times after the last to the last.
double zoh_command(std::span<const TimedCommand> history, double t_s);

/// Advances a first-order lag from t_from to t_to. The drive term is the
/// command stream delayed by dead_time_s; integration is exact across the
/// delayed stream's breakpoints, so the result does not depend on any
/// sub-stepping choice.
double advance_first_order_lag(const PowertrainParams& params, double omega, double t_from_s,
                               double t_to_s, std::span<const TimedCommand> cmd_history);

/// Predicted wheel speed at time t given the speed omega_t0 observed at t0 and
/// the commanded stream. Equal to the analytic transient response
///   w(t) = e^beta w(t0) + (1 - e^beta) cmd(t - tau_d),  beta = -(t - t0)/tau_c
/// on every interval where the delayed command is constant, re-anchored at
/// each command change. Throws std::invalid_argument on an empty history.
double predict_wheel_speed(const PowertrainParams& params, double omega_t0_rad_s, double t0_s,
                           std::span<const TimedCommand> cmd_history, double t_s);

/// A transient segment used for powertrain identification: measured wheel
/// speeds following a command step. `commands` must cover the window shifted
/// back by the largest dead time under consideration.
struct TransientWindow {
  double t0_s = 0.0;
  double omega_t0_rad_s = 0.0;
  std::vector<TimedCommand> commands;
  std::vector<TimedCommand> measured;
};

struct IdentifyOptions {
  double tau_c_min_s = 0.01;
  double tau_c_max_s = 2.5;
  double tau_d_min_s = 0.0;
  double tau_d_max_s = 0.6;
  int coarse_tau_c_points = 40;  // log-spaced
  int coarse_tau_d_points = 25;  // linear
  int refine_rounds = 7;
};

/// Least-squares fit of (tau_c, tau_d) over all windows: coarse grid search
/// followed by iterative local refinement. Deterministic for fixed input.
/// Throws InsufficientExcitationError when no window contains a command step
/// away from its initial speed.
PowertrainParams identify_powertrain(std::span<const TransientWindow> windows,
                                     const IdentifyOptions& options = {});

/// Residual sum of squares of the model against the measured samples.
double powertrain_sse(const PowertrainParams& params, std::span<const TransientWindow> windows);

/// Runs the response model over a uniform-rate command track, per side.
/// Output sample k is the modeled speed at t = k / rate_hz, starting from
/// `initial`; commands are held zero-order between samples and the stream
/// before t = 0 is taken equal to the initial speeds (plant at equilibrium).
std::vector<WheelSpeeds> simulate_wheel_track(const SidePair<PowertrainParams>& params,
                                              std::span<const WheelSpeeds> commands, double rate_hz,
                                              const WheelSpeeds& initial = {});

}  // namespace slipkit
