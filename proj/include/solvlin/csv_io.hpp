// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_CSV_IO_HPP
#define SOLVLIN_CSV_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "solvlin/flows.hpp"

namespace solvlin {

/// One CSV row of a trajectory dump; the audit columns are present when the
/// writer was asked for the RK4 cross-check.
struct TrajectoryRow {
  double t{0.0};
  double x{0.0};
  double y{0.0};
  double u{0.0};
  std::optional<double> x_rk4;
  std::optional<double> y_rk4;
};

/// Header `t,x,y,u` (plus `x_rk4,y_rk4` when audit is non-null), one row per
/// sample, round-trip decimal formatting.  `audit` must be sampled at the
/// same times as `traj`.
std::string trajectory_to_csv(const Trajectory& traj, const Trajectory* audit = nullptr);

/// Inverse of trajectory_to_csv; exact round trip.
std::vector<TrajectoryRow> trajectory_from_csv(const std::string& text);

/// Control file: `dt,u` rows (optional header, blank lines and '#' comments
/// skipped).  Throws std::invalid_argument naming the offending line on
/// malformed input.
PiecewiseControl control_from_csv(const std::string& text);

std::string control_to_csv(const PiecewiseControl& ctrl);

}  // namespace solvlin

#endif
