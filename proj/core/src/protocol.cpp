#include "slipkit/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slipkit/errors.hpp"
#include "slipkit/rng.hpp"
#include "slipkit/slip_blr.hpp"

namespace slipkit {

std::vector<WheelSpeeds> sample_commands(const InputSpace& space, int count, std::uint64_t seed) {
  if (count < 0) {
    throw std::invalid_argument("sample_commands: negative count");
  }
  Rng rng(seed);
  std::vector<WheelSpeeds> samples(count);
  for (WheelSpeeds& s : samples) {
    s.left_rad_s = rng.uniform(space.omega_min_rad_s, space.omega_max_rad_s);
    s.right_rad_s = rng.uniform(space.omega_min_rad_s, space.omega_max_rad_s);
  }
  return samples;
}

std::vector<WheelSpeeds> sample_commands_forward_biased(const InputSpace& space, int count,
                                                        std::uint64_t seed) {
  if (count < 0) {
    throw std::invalid_argument("sample_commands_forward_biased: negative count");
  }
  Rng rng(seed);
  auto clamp = [&](double w) {
    return std::clamp(w, space.omega_min_rad_s, space.omega_max_rad_s);
  };
  std::vector<WheelSpeeds> samples(count);
  for (WheelSpeeds& s : samples) {
    const double forward = rng.uniform(0.15, 0.95) * space.omega_max_rad_s;
    const double differential = rng.uniform(-0.06, 0.06) * space.omega_max_rad_s;
    s.left_rad_s = clamp(forward - differential);
    s.right_rad_s = clamp(forward + differential);
  }
  return samples;
}

Schedule build_schedule(std::span<const WheelSpeeds> samples, double rate_hz,
                        const ProtocolConfig& config) {
  if (!(rate_hz > 0.0)) {
    throw std::invalid_argument("build_schedule: rate must be positive");
  }
  Schedule schedule;
  schedule.rate_hz = rate_hz;
  const double dt = 1.0 / rate_hz;
  const int per_window = static_cast<int>(std::lround(config.window_s * rate_hz));
  const int per_interval = per_window * config.windows_per_interval;
  const double max_step = config.slew_rad_s2 * dt;

  schedule.steps.reserve(samples.size() * per_interval);
  WheelSpeeds emitted{0.0, 0.0};  // protocol starts from rest
  long k = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (int j = 0; j < per_interval; ++j, ++k) {
      emitted.left_rad_s +=
          std::clamp(samples[i].left_rad_s - emitted.left_rad_s, -max_step, max_step);
      emitted.right_rad_s +=
          std::clamp(samples[i].right_rad_s - emitted.right_rad_s, -max_step, max_step);
      ScheduleStep step;
      step.t_s = k * dt;
      step.command = emitted;
      step.interval_id = static_cast<int>(i);
      step.tag = (j < per_window) ? WindowTag::Transient : WindowTag::Steady;
      schedule.steps.push_back(step);
    }
  }
  return schedule;
}

CharacterizationSchedule make_characterization_ramp(double probe_rad_s, double slew_rad_s2,
                                                    double hold_s, double rate_hz) {
  if (!(rate_hz > 0.0) || !(probe_rad_s > 0.0) || !(slew_rad_s2 > 0.0)) {
    throw std::invalid_argument("make_characterization_ramp: invalid parameters");
  }
  CharacterizationSchedule schedule;
  schedule.rate_hz = rate_hz;
  const double dt = 1.0 / rate_hz;
  const double step = slew_rad_s2 * dt;
  const long hold_steps = std::lround(hold_s * rate_hz);

  double cmd = 0.0;
  auto ramp_to = [&](double target) {
    while (cmd != target) {
      cmd += std::clamp(target - cmd, -step, step);
      schedule.command_rad_s.push_back(cmd);
    }
  };
  auto hold = [&]() {
    for (long i = 0; i < hold_steps; ++i) {
      schedule.command_rad_s.push_back(cmd);
    }
  };
  ramp_to(probe_rad_s);
  hold();
  ramp_to(-probe_rad_s);
  hold();
  return schedule;
}

InputSpace characterize_limits(WheelPlant& plant, const CharacterizationSchedule& schedule) {
  if (!(schedule.rate_hz > 0.0) || schedule.command_rad_s.empty()) {
    throw std::invalid_argument("characterize_limits: empty schedule");
  }
  const double dt = 1.0 / schedule.rate_hz;
  const std::size_t n = schedule.command_rad_s.size();
  std::vector<double> measured(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = schedule.command_rad_s[k];
    const WheelSpeeds m = plant.apply(WheelSpeeds{c, c}, dt);
    measured[k] = (m.left_rad_s + m.right_rad_s) / 2.0;
  }

  // A plateau is <1% relative change of a nonzero speed over 1 s while the
  // command asks for at least 2% more: the wheel has stopped following.
  const std::size_t window = std::max<std::size_t>(2, std::lround(schedule.rate_hz));
  double forward = 0.0;
  double reverse = 0.0;
  bool have_forward = false;
  bool have_reverse = false;
  for (std::size_t k = window - 1; k < n; ++k) {
    double lo = measured[k - window + 1];
    double hi = lo;
    double sum = 0.0;
    for (std::size_t j = k - window + 1; j <= k; ++j) {
      lo = std::min(lo, measured[j]);
      hi = std::max(hi, measured[j]);
      sum += measured[j];
    }
    const double mean = sum / static_cast<double>(window);
    if (std::abs(mean) < 1e-6 || (hi - lo) >= 0.01 * std::abs(mean)) {
      continue;
    }
    const double cmd = schedule.command_rad_s[k];
    if (cmd * mean <= 0.0 || std::abs(cmd) < 1.02 * std::abs(mean)) {
      continue;
    }
    if (mean > 0.0) {
      forward = mean;  // keep the latest (most settled) plateau
      have_forward = true;
    } else {
      reverse = mean;
      have_reverse = true;
    }
  }
  if (!have_forward || !have_reverse) {
    throw CharacterizationError(
        std::string("characterize_limits: no saturation plateau in the ") +
        (!have_forward ? "forward" : "reverse") + " direction");
  }
  return InputSpace{reverse, forward};
}

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

DriveDataset assemble_dataset(const SessionLog& log, const RobotGeometry& geom,
                              const std::optional<SidePair<PowertrainParams>>& powertrain,
                              const AssembleOptions& options) {
  DriveDataset ds;
  const std::size_t rows = log.rows.size();
  if (rows < 2) {
    ds.X_x.resize(0, 1);
    ds.X_y.resize(0, 1);
    ds.X_omega.resize(0, 3);
    ds.g_x.resize(0);
    ds.g_y.resize(0);
    ds.g_omega.resize(0);
    return ds;
  }

  std::vector<double> periods;
  periods.reserve(rows - 1);
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    periods.push_back(log.rows[i + 1].t_s - log.rows[i].t_s);
  }
  const double period = median_of(periods);

  // Wheel speeds feeding the slip inputs: the powertrain response to the
  // logged commands (estimated wheels), or raw encoder values.
  std::vector<WheelSpeeds> wheels_hat(rows);
  if (powertrain.has_value() && !options.raw_encoders) {
    std::vector<TimedCommand> left(rows + 1);
    std::vector<TimedCommand> right(rows + 1);
    left[0] = {-1e9, log.rows.front().meas.left_rad_s};
    right[0] = {-1e9, log.rows.front().meas.right_rad_s};
    for (std::size_t i = 0; i < rows; ++i) {
      left[i + 1] = {log.rows[i].t_s, log.rows[i].cmd.left_rad_s};
      right[i + 1] = {log.rows[i].t_s, log.rows[i].cmd.right_rad_s};
    }
    WheelSpeeds w = log.rows.front().meas;
    wheels_hat[0] = w;
    for (std::size_t i = 0; i + 1 < rows; ++i) {
      w.left_rad_s = advance_first_order_lag(powertrain->left, w.left_rad_s, log.rows[i].t_s,
                                             log.rows[i + 1].t_s, left);
      w.right_rad_s = advance_first_order_lag(powertrain->right, w.right_rad_s, log.rows[i].t_s,
                                              log.rows[i + 1].t_s, right);
      wheels_hat[i + 1] = w;
    }
  } else {
    for (std::size_t i = 0; i < rows; ++i) {
      wheels_hat[i] = log.rows[i].meas;
    }
  }

  std::vector<Eigen::VectorXd> fx_rows, fy_rows, fo_rows;
  std::vector<double> gx, gy, go;
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    const double dt = log.rows[i + 1].t_s - log.rows[i].t_s;
    if (dt > options.max_gap_factor * period) {
      ds.rejected_rows.push_back(static_cast<long>(i));
      continue;
    }
    const BodyVelocity f = diff_drive_body_velocity(geom, wheels_hat[i]);
    const BodyVelocity v = body_velocity_from_poses(log.rows[i].pose, log.rows[i + 1].pose, dt);
    const SlipVelocity g = observed_slip(f, v);
    fx_rows.push_back(slip_features(SlipDimension::Longitudinal, f));
    fy_rows.push_back(slip_features(SlipDimension::Lateral, f));
    fo_rows.push_back(slip_features(SlipDimension::Angular, f));
    gx.push_back(g.gx_m_s);
    gy.push_back(g.gy_m_s);
    go.push_back(g.gomega_rad_s);
    ds.t_s.push_back(log.rows[i].t_s);
    ds.interval_id.push_back(log.rows[i].interval_id);
    ds.tag.push_back(log.rows[i].tag);
  }

  const long n = static_cast<long>(gx.size());
  ds.X_x.resize(n, 1);
  ds.X_y.resize(n, 1);
  ds.X_omega.resize(n, 3);
  ds.g_x.resize(n);
  ds.g_y.resize(n);
  ds.g_omega.resize(n);
  for (long i = 0; i < n; ++i) {
    ds.X_x.row(i) = fx_rows[i].transpose();
    ds.X_y.row(i) = fy_rows[i].transpose();
    ds.X_omega.row(i) = fo_rows[i].transpose();
    ds.g_x(i) = gx[i];
    ds.g_y(i) = gy[i];
    ds.g_omega(i) = go[i];
  }
  return ds;
}

namespace {

std::vector<int> ordered_unique_intervals(std::span<const int> ids) {
  std::vector<int> unique;
  for (int id : ids) {
    if (unique.empty() || unique.back() != id) {
      unique.push_back(id);
    }
  }
  return unique;
}

}  // namespace

std::pair<DriveDataset, DriveDataset> split_train_eval(const DriveDataset& dataset) {
  const std::vector<int> intervals = ordered_unique_intervals(dataset.interval_id);
  if (intervals.size() < 2) {
    throw std::invalid_argument("split_train_eval: need at least 2 intervals");
  }
  // Odd counts round toward train.
  const std::size_t train_count = (intervals.size() + 1) / 2;
  const int first_eval_interval = intervals[train_count];

  auto select = [&](bool train_half) {
    DriveDataset out;
    std::vector<long> keep;
    for (long i = 0; i < dataset.size(); ++i) {
      const bool in_train = dataset.interval_id[static_cast<std::size_t>(i)] < first_eval_interval;
      if (in_train == train_half) {
        keep.push_back(i);
      }
    }
    const long n = static_cast<long>(keep.size());
    out.X_x.resize(n, dataset.X_x.cols());
    out.X_y.resize(n, dataset.X_y.cols());
    out.X_omega.resize(n, dataset.X_omega.cols());
    out.g_x.resize(n);
    out.g_y.resize(n);
    out.g_omega.resize(n);
    for (long j = 0; j < n; ++j) {
      const long i = keep[static_cast<std::size_t>(j)];
      out.X_x.row(j) = dataset.X_x.row(i);
      out.X_y.row(j) = dataset.X_y.row(i);
      out.X_omega.row(j) = dataset.X_omega.row(i);
      out.g_x(j) = dataset.g_x(i);
      out.g_y(j) = dataset.g_y(i);
      out.g_omega(j) = dataset.g_omega(i);
      out.t_s.push_back(dataset.t_s[static_cast<std::size_t>(i)]);
      out.interval_id.push_back(dataset.interval_id[static_cast<std::size_t>(i)]);
      out.tag.push_back(dataset.tag[static_cast<std::size_t>(i)]);
    }
    return out;
  };
  return {select(true), select(false)};
}

std::pair<SessionLog, SessionLog> split_log(const SessionLog& log) {
  std::vector<int> ids;
  ids.reserve(log.rows.size());
  for (const LogRow& row : log.rows) {
    ids.push_back(row.interval_id);
  }
  const std::vector<int> intervals = ordered_unique_intervals(ids);
  if (intervals.size() < 2) {
    throw std::invalid_argument("split_log: need at least 2 intervals");
  }
  const std::size_t train_count = (intervals.size() + 1) / 2;
  const int first_eval_interval = intervals[train_count];

  SessionLog train, eval;
  for (const LogRow& row : log.rows) {
    (row.interval_id < first_eval_interval ? train : eval).rows.push_back(row);
  }
  return {train, eval};
}

SidePair<std::vector<TransientWindow>> extract_transient_windows(const SessionLog& log) {
  SidePair<std::vector<TransientWindow>> windows;
  if (log.rows.empty()) {
    return windows;
  }

  std::vector<TimedCommand> left(log.rows.size() + 1);
  std::vector<TimedCommand> right(log.rows.size() + 1);
  left[0] = {-1e9, log.rows.front().meas.left_rad_s};
  right[0] = {-1e9, log.rows.front().meas.right_rad_s};
  for (std::size_t i = 0; i < log.rows.size(); ++i) {
    left[i + 1] = {log.rows[i].t_s, log.rows[i].cmd.left_rad_s};
    right[i + 1] = {log.rows[i].t_s, log.rows[i].cmd.right_rad_s};
  }

  std::size_t i = 0;
  while (i < log.rows.size()) {
    if (log.rows[i].tag != WindowTag::Transient) {
      ++i;
      continue;
    }
    const int interval = log.rows[i].interval_id;
    std::size_t j = i;
    while (j < log.rows.size() && log.rows[j].tag == WindowTag::Transient &&
           log.rows[j].interval_id == interval) {
      ++j;
    }
    TransientWindow wl, wr;
    wl.t0_s = wr.t0_s = log.rows[i].t_s;
    wl.omega_t0_rad_s = log.rows[i].meas.left_rad_s;
    wr.omega_t0_rad_s = log.rows[i].meas.right_rad_s;
    wl.commands.assign(left.begin(), left.end());
    wr.commands.assign(right.begin(), right.end());
    for (std::size_t k = i; k < j; ++k) {
      wl.measured.push_back({log.rows[k].t_s, log.rows[k].meas.left_rad_s});
      wr.measured.push_back({log.rows[k].t_s, log.rows[k].meas.right_rad_s});
    }
    windows.left.push_back(std::move(wl));
    windows.right.push_back(std::move(wr));
    i = j;
  }
  return windows;
}

}  // namespace slipkit
