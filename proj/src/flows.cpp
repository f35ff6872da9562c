// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/flows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace solvlin {

double PiecewiseControl::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments) total += seg.dt;
  return total;
}

void PiecewiseControl::validate(const SystemParams& params) const {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (!(seg.dt > 0.0) || !std::isfinite(seg.dt))
      throw std::invalid_argument("control segment " + std::to_string(i) +
                                  ": dt must be positive and finite");
    if (!params.contains_control(seg.u))
      throw std::invalid_argument("control segment " + std::to_string(i) + ": u = " +
                                  std::to_string(seg.u) + " outside [omega_lo, omega_hi]");
  }
}

PiecewiseControl PiecewiseControl::reversed() const {
  PiecewiseControl out;
  out.segments.reserve(segments.size());
  for (auto it = segments.rbegin(); it != segments.rend(); ++it)
    out.segments.push_back({it->dt, -it->u});
  return out;
}

GroupPoint flow_constant(const NormalForm& nf, const GroupPoint& p, double u, double t) {
  const SystemParams& np = nf.params;
  switch (nf.tag) {
    case NormalFormTag::VerticalDrift: {
      const double rate = np.a * (p.x - 1.0) + u * p.x * np.beta;
      return GroupPoint(p.x, p.y + rate * t);
    }
    case NormalFormTag::Segment: {
      // y(t) = e^{bt} y + u x beta (e^{bt}-1)/b; equilibrium at -u x beta / b.
      const double ebt = std::exp(np.b * t);
      return GroupPoint(p.x, ebt * p.y + u * p.x * np.beta * std::expm1(np.b * t) / np.b);
    }
    case NormalFormTag::Saddle:
      return GroupPoint(std::exp(u * np.alpha * t) * p.x, std::exp(np.b * t) * p.y);
    case NormalFormTag::Shear: {
      const double ua = u * np.alpha;
      if (std::abs(ua) <= kSingularBranchTol)
        return GroupPoint(p.x, p.y + (p.x - 1.0) * t);
      return GroupPoint(std::exp(ua * t) * p.x, p.y + p.x * std::expm1(ua * t) / ua - t);
    }
    case NormalFormTag::Cone: {
      const double ua = u * np.alpha;
      const double b = np.b;
      if (std::abs(ua - b) <= kSingularBranchTol * std::max(1.0, std::abs(b))) {
        const double ebt = std::exp(b * t);
        return GroupPoint(ebt * p.x, ebt * (p.y + t * (b / np.alpha) * p.x));
      }
      // m_u(e^{ua t} - e^{bt}) rewritten through expm1 so the near-singular
      // range stays cancellation-free.
      const double ebt = std::exp(b * t);
      const double slope_term = u * ebt * std::expm1((ua - b) * t) / (ua - b);
      return GroupPoint(std::exp(ua * t) * p.x, slope_term * p.x + ebt * p.y);
    }
  }
  throw std::logic_error("flow_constant: unknown tag");
}

namespace {

// Flow in original coordinates through a prebuilt conjugation.
GroupPoint flow_through(const NormalForm& nf, const GroupPoint& p, double u, double t) {
  const double ue = nf.reversed ? -u : u;
  const double te = nf.reversed ? -t : t;
  return nf.to_original(flow_constant(nf, nf.to_normal(p), ue, te));
}

}  // namespace

GroupPoint flow_constant(const SystemParams& params, const GroupPoint& p, double u, double t) {
  if (!params.contains_control(u))
    throw std::invalid_argument("flow_constant: control outside [omega_lo, omega_hi]");
  return flow_through(conjugate_to_normal_form(params), p, u, t);
}

Trajectory flow_piecewise(const SystemParams& params, const GroupPoint& p,
                          const PiecewiseControl& ctrl, int interior_samples_per_segment) {
  ctrl.validate(params);
  const NormalForm nf = conjugate_to_normal_form(params);
  const int k = std::max(1, interior_samples_per_segment);

  Trajectory traj;
  traj.control = ctrl;
  traj.samples.push_back({0.0, p});

  double t0 = 0.0;
  GroupPoint state = p;
  for (const auto& seg : ctrl.segments) {
    for (int j = 1; j < k; ++j) {
      const double dt = seg.dt * j / k;
      traj.samples.push_back({t0 + dt, flow_through(nf, state, seg.u, dt)});
    }
    state = flow_through(nf, state, seg.u, seg.dt);
    t0 += seg.dt;
    traj.samples.push_back({t0, state});
  }
  return traj;
}

GroupPoint flow_endpoint(const SystemParams& params, const GroupPoint& p,
                         const PiecewiseControl& ctrl) {
  ctrl.validate(params);
  const NormalForm nf = conjugate_to_normal_form(params);
  GroupPoint state = p;
  for (const auto& seg : ctrl.segments) state = flow_through(nf, state, seg.u, seg.dt);
  return state;
}

namespace {

struct RawState {
  double x, y;
};

RawState rhs_raw(const SystemParams& s, RawState p, double u) {
  return {u * s.alpha * p.x, s.a * (p.x - 1.0) + s.b * p.y + u * p.x * s.beta};
}

RawState rk4_step(const SystemParams& s, RawState p, double u, double h) {
  const RawState k1 = rhs_raw(s, p, u);
  const RawState k2 = rhs_raw(s, {p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y}, u);
  const RawState k3 = rhs_raw(s, {p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y}, u);
  const RawState k4 = rhs_raw(s, {p.x + h * k3.x, p.y + h * k3.y}, u);
  return {p.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          p.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

}  // namespace

Trajectory rk4_flow(const SystemParams& params, const GroupPoint& p,
                    const PiecewiseControl& ctrl, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("rk4_flow: step h must be positive");
  ctrl.validate(params);

  Trajectory traj;
  traj.control = ctrl;
  traj.samples.push_back({0.0, p});

  RawState state{p.x, p.y};
  double t0 = 0.0;
  for (const auto& seg : ctrl.segments) {
    // Split the segment so steps never straddle the control switch.
    const long n = std::max(1L, static_cast<long>(std::ceil(seg.dt / h)));
    const double hs = seg.dt / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
      state = rk4_step(params, state, seg.u, hs);
      if (!(state.x > 0.0) || !std::isfinite(state.x) || !std::isfinite(state.y))
        throw std::runtime_error(
            "rk4_flow: produced x <= 0 or non-finite state at t = " +
            std::to_string(t0 + hs * static_cast<double>(i + 1)) +
            "; reduce the step size");
      traj.samples.push_back(
          {t0 + hs * static_cast<double>(i + 1), GroupPoint(state.x, state.y)});
    }
    t0 += seg.dt;
    // Pin the boundary time exactly (hs*n accumulates roundoff).
    traj.samples.back().t = t0;
  }
  return traj;
}

double ray_translation_identity_check(const NormalForm& nf, const GroupPoint& p,
                                      double y2, double u, double t) {
  if (nf.tag != NormalFormTag::Cone)
    throw std::invalid_argument("ray_translation_identity_check needs the Cone shape");
  const GroupPoint lhs = flow_constant(nf, GroupPoint(p.x, p.y + y2), u, t);
  const GroupPoint base = flow_constant(nf, p, u, t);
  const double rhs_y = base.y + std::exp(nf.params.b * t) * y2;
  return std::hypot(lhs.x - base.x, lhs.y - rhs_y);
}

}  // namespace solvlin
