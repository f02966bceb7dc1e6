#include "slipkit/powertrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "slipkit/errors.hpp"

namespace slipkit {

double zoh_command(std::span<const TimedCommand> history, double t_s) {
  if (history.empty()) {
    throw std::invalid_argument("zoh_command: empty command history");
  }
  // Last sample with t <= t_s; clamp before the first sample.
  auto it = std::upper_bound(history.begin(), history.end(), t_s,
                             [](double t, const TimedCommand& c) { return t < c.t_s; });
  if (it == history.begin()) {
    return history.front().omega_rad_s;
  }
  return std::prev(it)->omega_rad_s;
}

double advance_first_order_lag(const PowertrainParams& params, double omega, double t_from_s,
                               double t_to_s, std::span<const TimedCommand> cmd_history) {
  if (cmd_history.empty()) {
    throw std::invalid_argument("advance_first_order_lag: empty command history");
  }
  if (t_to_s <= t_from_s) {
    return omega;
  }
  const double tau_c = params.time_constant_s;
  const double tau_d = params.dead_time_s;

  // Walk the delayed command stream segment by segment. `it` is the first
  // command whose (shifted) onset lies strictly after the current time.
  auto it = std::upper_bound(cmd_history.begin(), cmd_history.end(), t_from_s - tau_d,
                             [](double t, const TimedCommand& c) { return t < c.t_s; });
  double cmd = (it == cmd_history.begin()) ? cmd_history.front().omega_rad_s
                                           : std::prev(it)->omega_rad_s;
  double t = t_from_s;
  while (t < t_to_s) {
    const double t_next =
        (it == cmd_history.end()) ? t_to_s : std::min(t_to_s, it->t_s + tau_d);
    if (t_next > t) {
      const double decay = std::exp(-(t_next - t) / tau_c);
      omega = decay * omega + (1.0 - decay) * cmd;
      t = t_next;
    }
    if (it != cmd_history.end() && it->t_s + tau_d <= t) {
      cmd = it->omega_rad_s;
      ++it;
    } else if (t >= t_to_s) {
      break;
    }
  }
  return omega;
}

double predict_wheel_speed(const PowertrainParams& params, double omega_t0_rad_s, double t0_s,
                           std::span<const TimedCommand> cmd_history, double t_s) {
  if (cmd_history.empty()) {
    throw std::invalid_argument("predict_wheel_speed: empty command history");
  }
  if (t_s <= t0_s) {
    return omega_t0_rad_s;
  }
  return advance_first_order_lag(params, omega_t0_rad_s, t0_s, t_s, cmd_history);
}

double powertrain_sse(const PowertrainParams& params, std::span<const TransientWindow> windows) {
  double sse = 0.0;
  for (const TransientWindow& window : windows) {
    double omega = window.omega_t0_rad_s;
    double t_prev = window.t0_s;
    for (const TimedCommand& sample : window.measured) {
      omega = advance_first_order_lag(params, omega, t_prev, sample.t_s, window.commands);
      t_prev = sample.t_s;
      const double r = omega - sample.omega_rad_s;
      sse += r * r;
    }
  }
  return sse;
}

namespace {

bool has_command_step(std::span<const TransientWindow> windows) {
  for (const TransientWindow& window : windows) {
    if (window.measured.empty()) {
      continue;
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(window.omega_t0_rad_s));
    const double t_end = window.measured.back().t_s;
    for (const TimedCommand& c : window.commands) {
      if (c.t_s > t_end) {
        break;
      }
      if (std::abs(c.omega_rad_s - window.omega_t0_rad_s) > tol) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

PowertrainParams identify_powertrain(std::span<const TransientWindow> windows,
                                     const IdentifyOptions& options) {
  if (windows.empty()) {
    throw InsufficientExcitationError("identify_powertrain: no transient windows");
  }
  bool any_samples = false;
  for (const TransientWindow& w : windows) {
    if (w.commands.empty()) {
      throw InsufficientExcitationError("identify_powertrain: window without command history");
    }
    any_samples = any_samples || !w.measured.empty();
  }
  if (!any_samples) {
    throw InsufficientExcitationError("identify_powertrain: no measured samples");
  }
  if (!has_command_step(windows)) {
    throw InsufficientExcitationError(
        "identify_powertrain: commands never depart from the initial wheel speed");
  }

  const double log_c_min = std::log(options.tau_c_min_s);
  const double log_c_max = std::log(options.tau_c_max_s);

  double best_sse = std::numeric_limits<double>::infinity();
  PowertrainParams best{options.tau_c_min_s, options.tau_d_min_s};

  auto consider = [&](double tau_c, double tau_d) {
    const PowertrainParams candidate{tau_c, tau_d};
    const double sse = powertrain_sse(candidate, windows);
    if (sse < best_sse) {
      best_sse = sse;
      best = candidate;
    }
  };

  for (int i = 0; i < options.coarse_tau_c_points; ++i) {
    const double f = options.coarse_tau_c_points == 1
                         ? 0.0
                         : static_cast<double>(i) / (options.coarse_tau_c_points - 1);
    const double tau_c = std::exp(log_c_min + f * (log_c_max - log_c_min));
    for (int j = 0; j < options.coarse_tau_d_points; ++j) {
      const double g = options.coarse_tau_d_points == 1
                           ? 0.0
                           : static_cast<double>(j) / (options.coarse_tau_d_points - 1);
      consider(tau_c, options.tau_d_min_s + g * (options.tau_d_max_s - options.tau_d_min_s));
    }
  }

  // Zoom refinement around the best coarse cell, shrinking the span each
  // round. 9x9 local grids keep the search derivative-free, which matters at
  // the dead-time kinks of the objective.
  double span_log_c = (log_c_max - log_c_min) / std::max(1, options.coarse_tau_c_points - 1);
  double span_d = (options.tau_d_max_s - options.tau_d_min_s) /
                  std::max(1, options.coarse_tau_d_points - 1);
  for (int round = 0; round < options.refine_rounds; ++round) {
    const double center_log_c = std::log(best.time_constant_s);
    const double center_d = best.dead_time_s;
    for (int i = -4; i <= 4; ++i) {
      const double log_c =
          std::clamp(center_log_c + span_log_c * i / 4.0, log_c_min, log_c_max);
      for (int j = -4; j <= 4; ++j) {
        const double tau_d = std::clamp(center_d + span_d * j / 4.0, options.tau_d_min_s,
                                        options.tau_d_max_s);
        consider(std::exp(log_c), tau_d);
      }
    }
    span_log_c *= 0.25;
    span_d *= 0.25;
  }
  return best;
}

std::vector<WheelSpeeds> simulate_wheel_track(const SidePair<PowertrainParams>& params,
                                              std::span<const WheelSpeeds> commands,
                                              double rate_hz, const WheelSpeeds& initial) {
  if (!(rate_hz > 0.0)) {
    throw std::invalid_argument("simulate_wheel_track: rate must be positive");
  }
  const double dt = 1.0 / rate_hz;
  const std::size_t n = commands.size();

  // Pre-session command equals the initial speed, so a plant at equilibrium
  // stays put until the first real command propagates through the dead time.
  std::vector<TimedCommand> left(n + 1);
  std::vector<TimedCommand> right(n + 1);
  left[0] = {-1e9, initial.left_rad_s};
  right[0] = {-1e9, initial.right_rad_s};
  for (std::size_t k = 0; k < n; ++k) {
    left[k + 1] = {k * dt, commands[k].left_rad_s};
    right[k + 1] = {k * dt, commands[k].right_rad_s};
  }

  std::vector<WheelSpeeds> out(n);
  WheelSpeeds w = initial;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = w;
    w.left_rad_s = advance_first_order_lag(params.left, w.left_rad_s, k * dt, (k + 1) * dt, left);
    w.right_rad_s =
        advance_first_order_lag(params.right, w.right_rad_s, k * dt, (k + 1) * dt, right);
  }
  return out;
}

}  // namespace slipkit
