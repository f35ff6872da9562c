// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_NORMAL_FORM_HPP
#define SOLVLIN_NORMAL_FORM_HPP

#include <string>

#include "solvlin/system.hpp"

namespace solvlin {

/// The five reduced shapes a system conjugates to.  The zero pattern of the
/// reduced coefficients identifies the shape:
///
///   VerticalDrift:  xdot = 0,        ydot = a(x-1) + u*x*beta   (alpha = b = 0)
///   Segment:        xdot = 0,        ydot = b*y + u*x*beta      (alpha = a = 0, b < 0)
///   Saddle:         xdot = u*alpha*x, ydot = b*y                (a = beta = 0)
///   Shear:          xdot = u*alpha*x, ydot = x - 1              (a = 1, b = beta = 0)
///   Cone:           xdot = u*alpha*x, ydot = b*y + u*x          (a = 0, beta = 1, b < 0)
enum class NormalFormTag { VerticalDrift, Segment, Saddle, Shear, Cone };

const char* to_string(NormalFormTag tag);

/// Result of conjugating a system to its normal form.
///
/// `params` is the reduced system (with the control range negated when
/// `reversed` is set), `psi` the automorphism carrying the original system to
/// it.  For Segment and Cone shapes with b > 0 a time reversal is applied
/// first, so the reduced b is always negative; `reversed` records that the
/// original and reduced time axes run opposite ways (and controls negate).
struct NormalForm {
  NormalFormTag tag{NormalFormTag::VerticalDrift};
  SystemParams params;
  Automorphism psi;
  bool reversed{false};

  GroupPoint to_normal(const GroupPoint& p) const { return psi.apply(p); }
  GroupPoint to_original(const GroupPoint& p) const { return psi.apply_inverse(p); }
};

/// Exhaustive case split on {alpha = 0} x {a*alpha + b*beta = 0} x {b = 0},
/// all tested exactly.  The returned automorphism satisfies
///   rhs_normal(psi(p), u') = +/- dpsi * rhs(p, -/+ u)
/// identically (sign and control negated in the reversed cases).
NormalForm conjugate_to_normal_form(const SystemParams& params);

/// Classification case number 1..5 for the same exact case split.
int classification_case(const SystemParams& params);

}  // namespace solvlin

#endif
