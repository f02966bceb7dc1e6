#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "slipkit/evaluation.hpp"
#include "slipkit/protocol.hpp"
#include "slipkit/session_log.hpp"

namespace slipkit {

/// CSV column order of a session log. Numbers are written with 17 significant
/// digits so a round-trip reproduces the exact double values.
///   t_s, cmd_left_rad_s, cmd_right_rad_s, meas_left_rad_s, meas_right_rad_s,
///   x_m, y_m, yaw_rad, interval_id, window_tag
/// window_tag is T or S. All writers in this module are atomic
/// (write-temp-then-rename).
void write_log_csv(const std::filesystem::path& path, const SessionLog& log);

/// Parses and validates a session log: exact header, strictly increasing t_s,
/// uniform period within 1e-6 s. Throws SchemaError with a 1-based line
/// number on violations.
SessionLog read_log_csv(const std::filesystem::path& path);

/// Schedule CSV: t_s, cmd_left_rad_s, cmd_right_rad_s, interval_id, window_tag.
void write_schedule_csv(const std::filesystem::path& path, const Schedule& schedule);
Schedule read_schedule_csv(const std::filesystem::path& path);

/// Input-space limits as a small JSON document.
void write_input_space_json(const std::filesystem::path& path, const InputSpace& space);
InputSpace read_input_space_json(const std::filesystem::path& path);

/// Per-model evaluation report rows, plot-ready.
struct EvalReportRow {
  std::string model;
  long windows = 0;
  double epsilon_t_median = 0.0;
  double epsilon_t_iqr = 0.0;
  double epsilon_r_median = 0.0;
  double epsilon_r_iqr = 0.0;
};

void write_eval_report_csv(const std::filesystem::path& path,
                           std::span<const EvalReportRow> rows);
std::vector<EvalReportRow> read_eval_report_csv(const std::filesystem::path& path);

/// Convergence curve rows:
///   train_seconds, epsilon_t_median, epsilon_t_iqr, epsilon_r_median,
///   epsilon_r_iqr, status (ok|insufficient).
void write_convergence_csv(const std::filesystem::path& path,
                           std::span<const ConvergencePoint> curve);
std::vector<ConvergencePoint> read_convergence_csv(const std::filesystem::path& path);

}  // namespace slipkit
