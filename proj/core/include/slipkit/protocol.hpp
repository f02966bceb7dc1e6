#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "slipkit/kinematics.hpp"
#include "slipkit/powertrain.hpp"
#include "slipkit/session_log.hpp"

namespace slipkit {

/// Measured wheel-speed limits; the admissible command set is the box
/// [omega_min, omega_max]^2 over (left, right).
struct InputSpace {
  double omega_min_rad_s = 0.0;
  double omega_max_rad_s = 0.0;

  bool valid() const { return omega_min_rad_s < 0.0 && 0.0 < omega_max_rad_s; }
};

struct ProtocolConfig {
  double window_s = 2.0;          // samples gathered per window
  int windows_per_interval = 3;   // [Transient, Steady, Steady]
  double slew_rad_s2 = 8.0;       // command slew-rate clamp (acceleration limit)
};

/// One command step of a generated calibration schedule.
struct ScheduleStep {
  double t_s = 0.0;
  WheelSpeeds command;
  int interval_id = 0;
  WindowTag tag = WindowTag::Transient;
};

struct Schedule {
  std::vector<ScheduleStep> steps;
  double rate_hz = 0.0;

  int interval_count() const {
    return steps.empty() ? 0 : steps.back().interval_id + 1;
  }
};

/// i.i.d. uniform draws over the input-space box, deterministic per seed.
std::vector<WheelSpeeds> sample_commands(const InputSpace& space, int count, std::uint64_t seed);

/// Forward-biased alternative sampler: mostly-straight forward commands with
/// small left/right differentials. Used as the narrow-coverage baseline when
/// benchmarking against uniform input-space sampling.
std::vector<WheelSpeeds> sample_commands_forward_biased(const InputSpace& space, int count,
                                                        std::uint64_t seed);

/// Expands sampled commands into a timed schedule: each sample is held for
/// windows_per_interval * window_s seconds at rate_hz, tagged [T, S, S...].
/// Emitted commands are slewed toward each target at most slew_rad_s2 per
/// second per wheel, starting from rest.
Schedule build_schedule(std::span<const WheelSpeeds> samples, double rate_hz,
                        const ProtocolConfig& config = {});

/// Blocking wheel-level plant interface used by input-space characterization:
/// advance the plant by dt under a command and report measured wheel speeds.
class WheelPlant {
 public:
  virtual ~WheelPlant() = default;
  virtual WheelSpeeds apply(const WheelSpeeds& command, double dt_s) = 0;
};

/// Straight-line probe schedule: ramp both wheels to +probe, hold, ramp to
/// -probe, hold. The probe must exceed any plausible actuator limit.
struct CharacterizationSchedule {
  std::vector<double> command_rad_s;
  double rate_hz = 0.0;
};

CharacterizationSchedule make_characterization_ramp(double probe_rad_s, double slew_rad_s2,
                                                    double hold_s, double rate_hz);

/// Drives the plant through the probe schedule and reads off the wheel-speed
/// plateaus in each direction. A plateau is less than 1% relative change over
/// 1 s of a nonzero speed while the command calls for more; its value becomes
/// omega_max (forward) or omega_min (reverse). Throws CharacterizationError
/// when either direction never saturates.
InputSpace characterize_limits(WheelPlant& plant, const CharacterizationSchedule& schedule);

/// Regression arrays assembled from a driving log: per-dimension slip inputs
/// and targets plus protocol bookkeeping, one row per consecutive log pair.
struct DriveDataset {
  Eigen::MatrixXd X_x;      // n x 1
  Eigen::MatrixXd X_y;      // n x 1
  Eigen::MatrixXd X_omega;  // n x 3
  Eigen::VectorXd g_x;
  Eigen::VectorXd g_y;
  Eigen::VectorXd g_omega;
  std::vector<double> t_s;
  std::vector<int> interval_id;
  std::vector<WindowTag> tag;
  std::vector<long> rejected_rows;  // log row indices dropped by the gap rule

  long size() const { return g_x.size(); }
};

struct AssembleOptions {
  /// Rows whose step exceeds this multiple of the median period are rejected.
  double max_gap_factor = 1.5;
  /// Use raw encoder wheel speeds instead of powertrain-estimated speeds.
  bool raw_encoders = false;
};

/// Builds the training arrays from a synchronized log. Slip inputs come from
/// the commanded body velocity of the estimated wheel speeds (the powertrain
/// response to the logged commands) or, without powertrain parameters, of the
/// measured wheel speeds; slip targets are commanded minus pose-derived body
/// velocity. Transient and steady rows are both retained, tagged.
DriveDataset assemble_dataset(const SessionLog& log, const RobotGeometry& geom,
                              const std::optional<SidePair<PowertrainParams>>& powertrain,
                              const AssembleOptions& options = {});

/// Splits at training-interval granularity: the first ceil(m/2) intervals go
/// to train, the rest to eval, so no window straddles the split.
/// Throws std::invalid_argument with fewer than 2 intervals.
std::pair<DriveDataset, DriveDataset> split_train_eval(const DriveDataset& dataset);

/// Same chronological-halves rule applied to a raw log.
std::pair<SessionLog, SessionLog> split_log(const SessionLog& log);

/// Collects per-side transient windows (rows tagged T, grouped by interval)
/// for powertrain identification. Command history is taken from the whole
/// log so dead-time lookups before each window stay covered.
SidePair<std::vector<TransientWindow>> extract_transient_windows(const SessionLog& log);

}  // namespace slipkit
