// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_SYSTEM_HPP
#define SOLVLIN_SYSTEM_HPP

#include "solvlin/group.hpp"

namespace solvlin {

/// Coefficients of a linear control system on G:
///
///   xdot = u*alpha*x
///   ydot = a*(x-1) + b*y + u*x*beta,     u in [omega_lo, omega_hi]
///
/// i.e. drift field (0, a(x-1)+by) plus u times the invariant field
/// (x*alpha, x*beta).  Invariants: (a,b) != (0,0), (alpha,beta) != (0,0),
/// omega_lo < 0 < omega_hi.
struct SystemParams {
  double a{0.0};
  double b{0.0};
  double alpha{0.0};
  double beta{0.0};
  double omega_lo{-1.0};
  double omega_hi{1.0};

  SystemParams() = default;
  SystemParams(double a_, double b_, double alpha_, double beta_,
               double omega_lo_, double omega_hi_);

  bool contains_control(double u) const { return u >= omega_lo && u <= omega_hi; }
};

/// Drift field X(x,y) = (0, a(x-1)+by); vanishes at the identity.
TangentVector linear_field(const SystemParams& params, const GroupPoint& p);

/// Invariant field Y(x,y) = (x*alpha, x*beta); value at the identity is (alpha, beta).
TangentVector invariant_field(const SystemParams& params, const GroupPoint& p);

/// Full right-hand side X(p) + u*Y(p).  Throws if u is outside the control range.
TangentVector system_rhs(const SystemParams& params, const GroupPoint& p, double u);

/// Lie algebra rank condition: alpha*(a*alpha + b*beta) != 0, tested exactly
/// (the coefficients are user-supplied; a tolerance would silently change the
/// classification).
bool larc(const SystemParams& params);

/// Parameter map (a,b,Omega) -> (-a,-b,-Omega) realizing time reversal:
/// trajectories of the reversed system under u -> -u are exactly the
/// time-reversed trajectories of the original one.
SystemParams time_reverse(const SystemParams& params);

/// Pushforward of the system under an automorphism psi = (c,d):
/// (a,b,alpha,beta) -> (d*a - c*b, b, alpha, c*alpha + d*beta), Omega unchanged.
/// The result is conjugate to the input: rhs'(psi(p), u) = dpsi * rhs(p, u).
SystemParams transform_params(const SystemParams& params, const Automorphism& psi);

}  // namespace solvlin

#endif
