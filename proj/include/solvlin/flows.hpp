// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_FLOWS_HPP
#define SOLVLIN_FLOWS_HPP

#include <vector>

#include "solvlin/normal_form.hpp"

namespace solvlin {

/// One constant-control piece: hold u for dt seconds.
struct ControlSegment {
  double dt{0.0};
  double u{0.0};
};

/// Piecewise-constant control as an ordered list of segments.
struct PiecewiseControl {
  std::vector<ControlSegment> segments;

  double total_duration() const;
  /// dt > 0 on every segment and every level inside the system's range.
  void validate(const SystemParams& params) const;
  /// The control steering the time-reversed system along the reversed path:
  /// segments in reverse order with u -> -u.
  PiecewiseControl reversed() const;
};

struct TrajectorySample {
  double t{0.0};
  GroupPoint p;
};

/// Sampled solution curve.  Samples are strictly increasing in t starting at
/// t = 0; they are for inspection only and never feed back into the state.
struct Trajectory {
  std::vector<TrajectorySample> samples;
  PiecewiseControl control;

  const GroupPoint& endpoint() const { return samples.back().p; }
};

/// Relative threshold for taking a singular flow branch (u*alpha == b in the
/// Cone shape, u*alpha == 0 in the Shear shape).  The regular formula tends to
/// the singular one, so the switch is continuous.
inline constexpr double kSingularBranchTol = 1e-10;

/// Closed-form constant-control flow of a normal form, valid for any real t.
GroupPoint flow_constant(const NormalForm& nf, const GroupPoint& p, double u, double t);

/// Closed-form flow of the system in its original coordinates, evaluated as
/// psi^-1 o flow_normal o psi (with t -> -t, u -> -u when the normal form is
/// time-reversed).  Throws if u lies outside the control range.
GroupPoint flow_constant(const SystemParams& params, const GroupPoint& p, double u, double t);

/// Concatenated closed-form segments.  Samples are recorded at segment
/// boundaries plus an interior step of dt/interior_samples_per_segment.
Trajectory flow_piecewise(const SystemParams& params, const GroupPoint& p,
                          const PiecewiseControl& ctrl, int interior_samples_per_segment = 16);

/// Endpoint of flow_piecewise without recording interior samples.
GroupPoint flow_endpoint(const SystemParams& params, const GroupPoint& p,
                         const PiecewiseControl& ctrl);

/// Classical fixed-step RK4 integration of the system right-hand side.
/// Steps never straddle a control switch.  Throws std::runtime_error if a
/// step produces x <= 0 (impossible analytically; signals a step-size
/// problem).
Trajectory rk4_flow(const SystemParams& params, const GroupPoint& p,
                    const PiecewiseControl& ctrl, double h);

/// Residual of the vertical translation identity of the Cone shape,
///   phi(t,(x, y1+y2), u) = phi(t,(x, y1), u) + (0, e^{bt} y2),
/// which the uniqueness argument for the cone control set rests on.
/// Returns the euclidean norm of the difference of the two sides.
double ray_translation_identity_check(const NormalForm& nf, const GroupPoint& p,
                                      double y2, double u, double t);

}  // namespace solvlin

#endif
