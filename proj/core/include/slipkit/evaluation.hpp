#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "slipkit/kinematics.hpp"
#include "slipkit/powertrain.hpp"
#include "slipkit/protocol.hpp"
#include "slipkit/session_log.hpp"
#include "slipkit/slip_blr.hpp"

namespace slipkit {

/// Default prediction horizon: 2 s of commands at 20 Hz.
inline constexpr double kPredictionHorizonS = 2.0;
inline constexpr double kCommandRateHz = 20.0;
inline constexpr int kDefaultHorizonSteps = 40;

/// A fixed-horizon evaluation slice: initial pose and measured wheel speeds,
/// the h commands applied from there, and the h ground-truth poses that
/// followed. `pre_commands` carries the command stream just before the window
/// so dead-time lookups stay covered.
struct PredictionWindow {
  PlanarState initial_state;
  WheelSpeeds initial_wheels;
  std::vector<WheelSpeeds> commands;
  std::vector<PlanarState> truth;
  std::vector<WheelSpeeds> pre_commands;
  double rate_hz = kCommandRateHz;
  double t0_s = 0.0;

  int horizon() const { return static_cast<int>(commands.size()); }
};

/// Non-overlapping windows (stride = h) cut from a log. Windows containing a
/// timing gap are skipped.
std::vector<PredictionWindow> extract_prediction_windows(const SessionLog& log,
                                                         int horizon_steps = kDefaultHorizonSteps);

/// The model ladder evaluated in this toolkit, from least to most informed.
enum class RolloutModel { Naive, PowertrainAware, SlipBlr };

/// Everything a rollout may need; the optional layers are only required by
/// the model variants that use them.
struct ModelStack {
  RobotGeometry geometry;
  std::optional<SidePair<PowertrainParams>> powertrain;
  std::optional<SlipModel> slip;
};

/// Integrates predicted states over the window horizon at the command rate:
///   Naive           - ideal differential drive on the commanded wheels
///   PowertrainAware - ideal differential drive on lag-filtered wheels
///   SlipBlr         - powertrain-aware minus posterior-mean slip
/// Returns h states. Throws UntrainedModelError when SlipBlr is requested
/// without a trained slip model, std::invalid_argument when a required layer
/// is missing.
std::vector<PlanarState> rollout(const ModelStack& stack, RolloutModel model,
                                 const PredictionWindow& window);

/// Masked mean root square error between two equal-length state sequences:
///   (1/h) sum_j sqrt((q_j - qhat_j)^T diag(mask) (q_j - qhat_j))
/// with yaw residuals wrapped to (-pi, pi] before squaring.
/// Throws std::invalid_argument on length mismatch or empty input.
double mrmse(std::span<const PlanarState> truth, std::span<const PlanarState> predicted,
             const std::array<double, 3>& mask);

inline constexpr std::array<double, 3> kTranslationalMask{1.0, 1.0, 0.0};
inline constexpr std::array<double, 3> kRotationalMask{0.0, 0.0, 1.0};

struct MrmseResult {
  double epsilon_t = 0.0;  // m
  double epsilon_r = 0.0;  // rad
};

MrmseResult evaluate_window(const ModelStack& stack, RolloutModel model,
                            const PredictionWindow& window);

/// Deterministic order statistics used for reporting (linear interpolation
/// between order statistics).
double median(std::vector<double> values);
double interquartile_range(std::vector<double> values);

struct TrainOptions {
  double phi = kDefaultPhi;
  bool raw_encoders = false;
  IdentifyOptions identify;
};

/// Fits the full model stack (per-side powertrain from transient windows,
/// then per-dimension slip BLR on the assembled dataset) from a training log.
ModelStack train_from_log(const SessionLog& train_log, const RobotGeometry& geom,
                          const TrainOptions& options = {});

struct ConvergencePoint {
  double train_seconds = 0.0;
  double epsilon_t_median = 0.0;
  double epsilon_t_iqr = 0.0;
  double epsilon_r_median = 0.0;
  double epsilon_r_iqr = 0.0;
  bool insufficient = false;  // flagged: prefix could not train a full model
};

/// Trains on chronological prefixes of the training log and scores each
/// against the same evaluation windows. Prefixes without enough excitation
/// are flagged rather than dropped.
std::vector<ConvergencePoint> convergence_curve(const SessionLog& train_log,
                                                const RobotGeometry& geom,
                                                std::span<const PredictionWindow> eval_windows,
                                                std::span<const double> grid_seconds,
                                                const TrainOptions& options = {});

/// Smallest grid time T such that the finite-difference gradients of both
/// error medians stay below the thresholds for every grid point >= T
/// (central differences inside, one-sided at the ends). nullopt when the
/// curve never settles or has fewer than 3 usable points.
std::optional<double> converged_time(std::span<const ConvergencePoint> curve,
                                     double grad_threshold_t = 0.01,
                                     double grad_threshold_r = 0.01);

}  // namespace slipkit
