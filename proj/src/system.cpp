// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace solvlin {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw std::invalid_argument(std::string("SystemParams: ") + name + " must be finite");
}

}  // namespace

SystemParams::SystemParams(double a_, double b_, double alpha_, double beta_,
                           double omega_lo_, double omega_hi_)
    : a(a_), b(b_), alpha(alpha_), beta(beta_), omega_lo(omega_lo_), omega_hi(omega_hi_) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(omega_lo, "omega_lo");
  require_finite(omega_hi, "omega_hi");
  if (a == 0.0 && b == 0.0)
    throw std::invalid_argument("SystemParams: (a, b) != (0, 0) violated");
  if (alpha == 0.0 && beta == 0.0)
    throw std::invalid_argument("SystemParams: (alpha, beta) != (0, 0) violated");
  if (!(omega_lo < 0.0 && 0.0 < omega_hi))
    throw std::invalid_argument("SystemParams: omega_lo < 0 < omega_hi violated");
}

TangentVector linear_field(const SystemParams& params, const GroupPoint& p) {
  return TangentVector{0.0, params.a * (p.x - 1.0) + params.b * p.y};
}

TangentVector invariant_field(const SystemParams& params, const GroupPoint& p) {
  return TangentVector{p.x * params.alpha, p.x * params.beta};
}

TangentVector system_rhs(const SystemParams& params, const GroupPoint& p, double u) {
  if (!params.contains_control(u))
    throw std::invalid_argument("system_rhs: control u = " + std::to_string(u) +
                                " outside [omega_lo, omega_hi]");
  const TangentVector drift = linear_field(params, p);
  const TangentVector inv = invariant_field(params, p);
  return TangentVector{drift.vx + u * inv.vx, drift.vy + u * inv.vy};
}

bool larc(const SystemParams& params) {
  return params.alpha * (params.a * params.alpha + params.b * params.beta) != 0.0;
}

SystemParams time_reverse(const SystemParams& params) {
  return SystemParams(-params.a, -params.b, params.alpha, params.beta,
                      -params.omega_hi, -params.omega_lo);
}

SystemParams transform_params(const SystemParams& params, const Automorphism& psi) {
  return SystemParams(psi.d * params.a - psi.c * params.b, params.b, params.alpha,
                      psi.c * params.alpha + psi.d * params.beta,
                      params.omega_lo, params.omega_hi);
}

}  // namespace solvlin
