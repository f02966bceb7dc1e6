#pragma once

#include <vector>

#include "slipkit/kinematics.hpp"

namespace slipkit {

/// Protocol window kind: one transient window then two steady windows per
/// training interval.
enum class WindowTag { Transient, Steady };

/// One synchronized sample of a driving session: the command issued at t, the
/// wheel speeds and pose measured at t, and the protocol bookkeeping tags.
struct LogRow {
  double t_s = 0.0;
  WheelSpeeds cmd;
  WheelSpeeds meas;
  PlanarState pose;
  int interval_id = 0;
  WindowTag tag = WindowTag::Transient;
};

struct SessionLog {
  std::vector<LogRow> rows;

  bool empty() const { return rows.empty(); }
  double duration_s() const { return rows.empty() ? 0.0 : rows.back().t_s - rows.front().t_s; }
};

}  // namespace slipkit
