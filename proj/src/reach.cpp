// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/reach.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "solvlin/rng.hpp"

namespace solvlin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double distance(const GroupPoint& p, const GroupPoint& q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

// Random piecewise-constant control over [0, horizon]: dwell times uniform in
// (0, horizon/4], levels biased 3:1 toward the bang-bang set {u_lo, 0, u_hi}.
PiecewiseControl random_control(const SystemParams& s, double horizon, Rng& rng) {
  PiecewiseControl ctrl;
  double total = 0.0;
  while (total < horizon) {
    double dt = (1.0 - rng.uniform01()) * horizon / 4.0;
    dt = std::min(dt, horizon - total);
    if (dt <= 0.0) break;
    double u;
    if (rng.uniform01() < 0.75) {
      switch (rng.below(3)) {
        case 0: u = s.omega_lo; break;
        case 1: u = 0.0; break;
        default: u = s.omega_hi; break;
      }
    } else {
      u = rng.uniform(s.omega_lo, s.omega_hi);
    }
    ctrl.segments.push_back({dt, u});
    total += dt;
  }
  return ctrl;
}

}  // namespace

const char* to_string(SteerVerdict v) {
  switch (v) {
    case SteerVerdict::Found: return "found";
    case SteerVerdict::BarrierCertified: return "barrier-certified";
    case SteerVerdict::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

std::vector<Trajectory> reach_sample_trajectories(const SystemParams& params,
                                                  const GroupPoint& p, double horizon,
                                                  int n, std::uint64_t seed) {
  if (!(horizon > 0.0)) throw std::invalid_argument("reach_sample: horizon must be > 0");
  if (n < 0) throw std::invalid_argument("reach_sample: n must be >= 0");
  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(n));
  const Rng base(seed);
  for (int i = 0; i < n; ++i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    out.push_back(flow_piecewise(params, p, random_control(params, horizon, rng)));
  }
  return out;
}

SampleCloud reach_sample(const SystemParams& params, const GroupPoint& p, double horizon,
                         int n, std::uint64_t seed) {
  SampleCloud cloud;
  for (const auto& traj : reach_sample_trajectories(params, p, horizon, n, seed)) {
    cloud.endpoints.push_back(traj.endpoint());
    for (const auto& s : traj.samples) cloud.samples.push_back(s.p);
  }
  return cloud;
}

// ---------------------------------------------------------------------------
// Analytic steering on the normal forms.
//
// Everything below works in normal coordinates on the reduced system
// nf.params, steering `from` to `to` forward in normal time.  The caller maps
// points in (and the control back out) through psi and the time reversal.
// ---------------------------------------------------------------------------

namespace {

void push_segment(PiecewiseControl& ctrl, double dt, double u) {
  if (dt > 0.0) ctrl.segments.push_back({dt, u});
}

// x is flow-invariant in the VerticalDrift and Segment shapes, so steering is
// possible only within a vertical line (up to the eps ball around the target).
bool x_matches(const GroupPoint& from, const GroupPoint& to, double eps) {
  return std::abs(to.x - from.x) <= 0.5 * eps;
}

std::optional<PiecewiseControl> steer_vertical_drift(const SystemParams& np,
                                                     const GroupPoint& from,
                                                     const GroupPoint& to, double eps) {
  if (!x_matches(from, to, eps)) return std::nullopt;
  const double dy = to.y - from.y;
  PiecewiseControl ctrl;
  if (dy == 0.0) return ctrl;
  // The rate a(x-1) + u x beta is affine in u; the extreme candidates suffice.
  double best_u = 0.0;
  double best_rate = 0.0;
  for (double u : {np.omega_lo, 0.0, np.omega_hi}) {
    const double rate = np.a * (from.x - 1.0) + u * from.x * np.beta;
    if (rate * dy > best_rate * dy) {
      best_rate = rate;
      best_u = u;
    }
  }
  if (best_rate * dy <= 0.0) return std::nullopt;
  push_segment(ctrl, dy / best_rate, best_u);
  return ctrl;
}

std::optional<PiecewiseControl> steer_segment(const SystemParams& np, const GroupPoint& from,
                                              const GroupPoint& to, double eps,
                                              double eps_normal_y) {
  if (!x_matches(from, to, eps)) return std::nullopt;
  PiecewiseControl ctrl;
  if (to.y == from.y) return ctrl;
  // Equilibria -u x beta / b sweep the segment as u sweeps Omega (b < 0 here).
  const double e_a = -np.omega_lo * from.x * np.beta / np.b;
  const double e_b = -np.omega_hi * from.x * np.beta / np.b;
  const double e_min = std::min(e_a, e_b);
  const double e_max = std::max(e_a, e_b);
  const double u_for_min = e_a <= e_b ? np.omega_lo : np.omega_hi;
  const double u_for_max = e_a <= e_b ? np.omega_hi : np.omega_lo;

  const bool up = to.y > from.y;
  const double e = up ? e_max : e_min;
  const double u = up ? u_for_max : u_for_min;
  if (up ? !(e >= to.y) : !(e <= to.y)) return std::nullopt;  // target beyond reach
  const double denom = from.y - e;
  if (denom == 0.0) return std::nullopt;
  const double ratio = (to.y - e) / denom;
  if (ratio > 0.0 && ratio < 1.0) {
    push_segment(ctrl, std::log(ratio) / np.b, u);  // exact hit
    return ctrl;
  }
  if (ratio == 0.0) {
    // Target is exactly the extreme equilibrium: approach it to within the
    // normal-coordinate tolerance (finite-time exact hit is impossible).
    if (!(eps_normal_y > 0.0)) return std::nullopt;
    const double t = std::log(0.5 * eps_normal_y / std::abs(denom)) / np.b;
    if (t > 0.0) push_segment(ctrl, t, u);
    return ctrl;
  }
  return std::nullopt;
}

std::optional<PiecewiseControl> steer_saddle(const SystemParams& np, const GroupPoint& from,
                                             const GroupPoint& to) {
  PiecewiseControl ctrl;
  const double s = std::log(to.x / from.x);
  if (from.y == 0.0) {
    if (to.y != 0.0) return std::nullopt;
    if (s == 0.0) return ctrl;
    // Pure x motion along the invariant axis.
    const double u = (s * np.alpha > 0.0) ? np.omega_hi : np.omega_lo;
    const double t = s / (u * np.alpha);
    if (!(t > 0.0)) return std::nullopt;
    push_segment(ctrl, t, u);
    return ctrl;
  }
  const double rho = to.y / from.y;
  if (!(rho > 0.0) || rho > 1.0) return std::nullopt;  // y decays strictly (b < 0)
  if (rho == 1.0) {
    if (s == 0.0) return ctrl;
    return std::nullopt;
  }
  // Total duration is pinned by the y ratio; the mean control must fit Omega.
  const double T = std::log(rho) / np.b;
  const double mean_u = s / (np.alpha * T);
  if (!(mean_u >= np.omega_lo && mean_u <= np.omega_hi)) return std::nullopt;
  push_segment(ctrl, T, mean_u);
  return ctrl;
}

// Shear shape: xdot = u alpha x, ydot = x - 1.  The two-phase construction:
// match x with a constant control, fix y with a zero-control drift phase
// before or after (whichever side has the right drift sign).
std::optional<PiecewiseControl> shear_two_phase(const SystemParams& np, const GroupPoint& from,
                                                const GroupPoint& to) {
  PiecewiseControl ctrl;
  double t1 = 0.0, u1 = 0.0, y_after = from.y;
  if (to.x != from.x) {
    const double s = std::log(to.x / from.x);
    u1 = (s * np.alpha > 0.0) ? np.omega_hi : np.omega_lo;
    const double ua = u1 * np.alpha;
    t1 = s / ua;
    y_after = from.y + from.x * std::expm1(ua * t1) / ua - t1;
  }
  const double dy = to.y - y_after;
  if (dy == 0.0) {
    push_segment(ctrl, t1, u1);
    return ctrl;
  }
  const double rate_after = to.x - 1.0;
  const double rate_before = from.x - 1.0;
  if (rate_after != 0.0 && dy * rate_after > 0.0) {
    push_segment(ctrl, t1, u1);
    push_segment(ctrl, dy / rate_after, 0.0);
    return ctrl;
  }
  if (rate_before != 0.0 && dy * rate_before > 0.0) {
    // The x phase shifts y by a constant, so a pre-drift of the same dy works.
    push_segment(ctrl, dy / rate_before, 0.0);
    push_segment(ctrl, t1, u1);
    return ctrl;
  }
  return std::nullopt;
}

std::optional<PiecewiseControl> steer_shear(const NormalForm& nf, const GroupPoint& from,
                                            const GroupPoint& to) {
  const SystemParams& np = nf.params;
  if (auto direct = shear_two_phase(np, from, to)) return direct;
  // Route through an intermediate abscissa on the other side of x = 1, where
  // the drift has the opposite sign.
  for (double mid : {0.5, 2.0, 0.25, 4.0, 1.0 / 8.0, 8.0}) {
    if (mid == from.x) continue;
    const double s = std::log(mid / from.x);
    const double u = (s * np.alpha > 0.0) ? np.omega_hi : np.omega_lo;
    const double ua = u * np.alpha;
    const double t = s / ua;
    const GroupPoint z(mid, from.y + from.x * std::expm1(ua * t) / ua - t);
    if (auto rest = shear_two_phase(np, z, to)) {
      PiecewiseControl ctrl;
      push_segment(ctrl, t, u);
      for (const auto& seg : rest->segments) ctrl.segments.push_back(seg);
      return ctrl;
    }
  }
  return std::nullopt;
}

// --- Cone shape -------------------------------------------------------------

struct ConeGeometry {
  Interval B;          // admissible ray controls
  double m_lo{-kInf};  // inf of slopes over B (-inf when the side is unbounded)
  double m_hi{kInf};
};

ConeGeometry cone_geometry(const NormalForm& nf) {
  ConeGeometry g;
  g.B = admissible_ray_set(nf);
  if (g.B.lo_closed) g.m_lo = ray_slope(g.B.lo, nf.params.alpha, nf.params.b).m;
  if (g.B.hi_closed) g.m_hi = ray_slope(g.B.hi, nf.params.alpha, nf.params.b).m;
  return g;
}

// Control whose invariant ray has slope m: inverse of m_u = u/(u alpha - b).
double control_for_slope(double m, double alpha, double b) {
  return m * b / (m * alpha - 1.0);
}

// Strictly interior control of B on the requested sign side; B always
// contains a neighbourhood of 0, so halving an endpoint stays interior.
double interior_control(const ConeGeometry& g, bool positive) {
  return positive ? g.B.hi / 2.0 : g.B.lo / 2.0;
}

bool slope_strictly_inside(const ConeGeometry& g, double s) {
  return s > g.m_lo && s < g.m_hi;
}

// Solve A*ta + C*tc = L with ta, tc >= 0 (scaling times on the start and end
// rays).  Returns false when the cone of achievable values misses L.
bool solve_two_scales(double A, double C, double L, double& ta, double& tc) {
  ta = tc = 0.0;
  if (L == 0.0) return true;
  if (C != 0.0 && L / C >= 0.0) {
    tc = L / C;
    return true;
  }
  if (A != 0.0 && L / A >= 0.0) {
    ta = L / A;
    return true;
  }
  if (A * C < 0.0) {
    // Opposite signs span the whole line: overshoot with ta, settle with tc.
    ta = (std::abs(L) + 1.0) / std::abs(A);
    tc = (L - A * ta) / C;
    return tc >= 0.0;
  }
  return false;
}

// One ray-to-ray leg: optional prescale on r_{u1}, transition to r_{u2},
// optional postscale, ending exactly at `to` (which must lie on r_{u2}).
std::optional<PiecewiseControl> cone_leg(const NormalForm& nf, const ConeGeometry& g,
                                         const GroupPoint& from, double u1,
                                         const GroupPoint& to, double u2) {
  const SystemParams& np = nf.params;
  PiecewiseControl ctrl;
  if (u1 == u2) {
    // Same ray: pure scaling.
    const double A = u2 * np.alpha;
    const double L = std::log(to.x / from.x);
    if (L == 0.0) return ctrl;
    if (A == 0.0 || L / A < 0.0) return std::nullopt;
    push_segment(ctrl, L / A, u2);
    return ctrl;
  }
  const double m1 = ray_slope(u1, np.alpha, np.b).m;
  const double m2 = ray_slope(u2, np.alpha, np.b).m;
  // Steering control whose target slope lies strictly beyond m2 as seen from
  // m1; ordering by u matches ordering by m inside B.
  const double us = m2 > m1 ? u2 + 0.5 * (g.B.hi - u2) : u2 + 0.5 * (g.B.lo - u2);
  const auto t0 = transition_time(nf, u1, u2, us);
  if (!t0) return std::nullopt;
  const double landing_x = std::exp(us * np.alpha * *t0) * from.x;
  double ta = 0.0, tc = 0.0;
  if (!solve_two_scales(u1 * np.alpha, u2 * np.alpha, std::log(to.x / landing_x), ta, tc))
    return std::nullopt;
  push_segment(ctrl, ta, u1);
  push_segment(ctrl, *t0, us);
  push_segment(ctrl, tc, u2);
  return ctrl;
}

std::optional<PiecewiseControl> steer_cone(const NormalForm& nf, const GroupPoint& from,
                                           const GroupPoint& to) {
  const SystemParams& np = nf.params;
  const ConeGeometry g = cone_geometry(nf);
  const double s_from = from.y / from.x;
  const double s_to = to.y / to.x;
  if (!slope_strictly_inside(g, s_from) || !slope_strictly_inside(g, s_to))
    return std::nullopt;  // only interior-to-interior is handled analytically
  const double u1 = control_for_slope(s_from, np.alpha, np.b);
  const double u2 = control_for_slope(s_to, np.alpha, np.b);
  if (!g.B.contains(u1) || !g.B.contains(u2)) return std::nullopt;

  if (auto direct = cone_leg(nf, g, from, u1, to, u2)) return direct;

  // Same-signed rays can fail the scaling constraint; route through an
  // intermediate ray on the opposite side, where the scaling signs oppose.
  for (bool positive : {u2 <= 0.0, u2 > 0.0}) {
    const double w = interior_control(g, positive);
    if (w == u1 || w == u2) continue;
    const double mw = ray_slope(w, np.alpha, np.b).m;
    const double m1 = ray_slope(u1, np.alpha, np.b).m;
    const double us = mw > m1 ? w + 0.5 * (g.B.hi - w) : w + 0.5 * (g.B.lo - w);
    const auto t0 = transition_time(nf, u1, w, us);
    if (!t0) continue;
    const GroupPoint z = flow_constant(nf, from, us, *t0);
    if (auto rest = cone_leg(nf, g, z, w, to, u2)) {
      PiecewiseControl ctrl;
      push_segment(ctrl, *t0, us);
      for (const auto& seg : rest->segments) ctrl.segments.push_back(seg);
      return ctrl;
    }
  }
  return std::nullopt;
}

std::optional<PiecewiseControl> analytic_steer(const NormalForm& nf, const GroupPoint& from,
                                               const GroupPoint& to, double eps) {
  const double eps_normal_y = eps * std::abs(nf.psi.d);
  switch (nf.tag) {
    case NormalFormTag::VerticalDrift:
      return steer_vertical_drift(nf.params, from, to, eps);
    case NormalFormTag::Segment:
      return steer_segment(nf.params, from, to, eps, eps_normal_y);
    case NormalFormTag::Saddle:
      return steer_saddle(nf.params, from, to);
    case NormalFormTag::Shear:
      return steer_shear(nf, from, to);
    case NormalFormTag::Cone:
      return steer_cone(nf, from, to);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Barrier certificates: sound proofs that no point within eps of the target
// is reachable.  All distances are evaluated in original coordinates; the
// reachable set is overapproximated in normal coordinates and pulled back.
// ---------------------------------------------------------------------------

// Distance from q to the half-plane {y <= line(x)} (or >= when `below`).
double halfplane_distance(const GroupPoint& q, const AffineLine& line, bool below) {
  const double residual = q.y - line.at(q.x);
  const double signed_gap = below ? residual : -residual;
  return std::max(0.0, signed_gap) / std::hypot(1.0, line.slope);
}

// Map the normal-coordinates half-plane {y' <= m x' + k} back through psi.
// psi^-1(x, y') = (x, (y' - c(x-1))/d); a negative d flips the side.
void pull_back_halfplane(const Automorphism& psi, double m, double k, bool below_normal,
                         AffineLine& line, bool& below) {
  line.slope = (m - psi.c) / psi.d;
  line.intercept = (k + psi.c) / psi.d;
  below = psi.d > 0.0 ? below_normal : !below_normal;
}

// Safety factor so a certificate never fires on a target actually within eps.
constexpr double kCertMargin = 1.0 + 1e-6;

bool certify_unreachable(const NormalForm& nf, const GroupPoint& from_n,
                         const GroupPoint& to_n, const GroupPoint& q_orig, double eps) {
  const SystemParams& np = nf.params;
  switch (nf.tag) {
    case NormalFormTag::VerticalDrift:
    case NormalFormTag::Segment: {
      // x is invariant in both shapes (and psi preserves x).
      if (std::abs(to_n.x - from_n.x) > eps * kCertMargin) return true;
      if (nf.tag == NormalFormTag::VerticalDrift) {
        const double r_lo = np.a * (from_n.x - 1.0) + np.omega_lo * from_n.x * np.beta;
        const double r_hi = np.a * (from_n.x - 1.0) + np.omega_hi * from_n.x * np.beta;
        const double r_min = std::min(r_lo, r_hi);
        const double r_max = std::max(r_lo, r_hi);
        // Monotone drift: the reachable y's form a half line from from_n.y.
        double gap_n = 0.0;
        if (r_max <= 0.0 && to_n.y > from_n.y) gap_n = to_n.y - from_n.y;
        if (r_min >= 0.0 && to_n.y < from_n.y) gap_n = from_n.y - to_n.y;
        return gap_n / std::abs(nf.psi.d) > eps * kCertMargin;
      }
      const double e_a = -np.omega_lo * from_n.x * np.beta / np.b;
      const double e_b = -np.omega_hi * from_n.x * np.beta / np.b;
      const double lo = std::min({e_a, e_b, from_n.y});
      const double hi = std::max({e_a, e_b, from_n.y});
      const double gap_n = std::max({0.0, to_n.y - hi, lo - to_n.y});
      return gap_n / std::abs(nf.psi.d) > eps * kCertMargin;
    }
    case NormalFormTag::Saddle: {
      // |y| strictly decays, so the orbit closure sits between y = 0 and
      // y = from_n.y; the pullback is a strip bounded by two parallel lines.
      const double y_near = 0.0;
      const double y_far = from_n.y;
      AffineLine l1, l2;
      bool below1, below2;
      pull_back_halfplane(nf.psi, 0.0, std::min(y_near, y_far), false, l1, below1);
      pull_back_halfplane(nf.psi, 0.0, std::max(y_near, y_far), true, l2, below2);
      const double d1 = halfplane_distance(q_orig, l1, below1);
      const double d2 = halfplane_distance(q_orig, l2, below2);
      return std::max(d1, d2) > eps * kCertMargin;
    }
    case NormalFormTag::Cone: {
      const ConeGeometry g = cone_geometry(nf);
      double best = 0.0;
      if (g.B.hi_closed) {
        // w = y - m_{u_hi} x satisfies w(t) <= e^{bt} w(0) along every
        // trajectory, so the orbit stays below y = m x + max(w0, 0).
        const double m = g.m_hi;
        const double w0 = std::max(0.0, from_n.y - m * from_n.x);
        AffineLine line;
        bool below;
        pull_back_halfplane(nf.psi, m, w0, true, line, below);
        best = std::max(best, halfplane_distance(q_orig, line, below));
      }
      if (g.B.lo_closed) {
        const double m = g.m_lo;
        const double v0 = std::max(0.0, m * from_n.x - from_n.y);
        AffineLine line;
        bool below;
        pull_back_halfplane(nf.psi, m, -v0, false, line, below);
        best = std::max(best, halfplane_distance(q_orig, line, below));
      }
      return best > eps * kCertMargin;
    }
    case NormalFormTag::Shear:
      return false;  // controllable: nothing to certify
  }
  return false;
}

// ---------------------------------------------------------------------------
// Random shooting with local refinement.
// ---------------------------------------------------------------------------

struct ShootingState {
  const SystemParams& sys;
  const GroupPoint& p;
  const GroupPoint& q;
  long budget;
  long expansions{0};

  double evaluate(const PiecewiseControl& ctrl) {
    ++expansions;
    try {
      return distance(flow_endpoint(sys, p, ctrl), q);
    } catch (const std::exception&) {
      return kInf;  // overflowed flow: treat as a bad candidate
    }
  }
  bool exhausted() const { return expansions >= budget; }
};

void refine_dwell_times(ShootingState& st, PiecewiseControl& best, double& best_err,
                        double eps) {
  // Bisection refinement, one dwell time at a time.
  bool improved = true;
  while (improved && !st.exhausted() && best_err > eps) {
    improved = false;
    for (std::size_t i = 0; i < best.segments.size(); ++i) {
      double lo = 0.0, hi = 2.0 * best.segments[i].dt;
      for (int iter = 0; iter < 24 && !st.exhausted(); ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        PiecewiseControl c1 = best, c2 = best;
        c1.segments[i].dt = std::max(m1, 1e-12);
        c2.segments[i].dt = std::max(m2, 1e-12);
        const double e1 = st.evaluate(c1);
        const double e2 = st.evaluate(c2);
        if (std::min(e1, e2) < best_err) {
          best = e1 <= e2 ? c1 : c2;
          best_err = std::min(e1, e2);
          improved = true;
        }
        if (e1 < e2) hi = m2; else lo = m1;
      }
      if (best_err <= eps) return;
    }
  }
}

SteeringResult shooting_search(const SystemParams& sys, const GroupPoint& p,
                               const GroupPoint& q, double eps, long budget, Rng rng,
                               long prior_expansions) {
  ShootingState st{sys, p, q, budget, prior_expansions};
  PiecewiseControl best;
  double best_err = st.evaluate(best);

  const double scale = std::max({1.0, std::abs(sys.b), std::abs(sys.alpha * sys.omega_hi),
                                 std::abs(sys.alpha * sys.omega_lo)});
  const long rolls = std::min<long>(128, std::max<long>(16, budget / 8));
  for (long k = 0; k < rolls && !st.exhausted(); ++k) {
    const double horizon = rng.uniform(0.5, 12.0) / scale * 2.0;
    PiecewiseControl ctrl = random_control(sys, horizon, rng);
    const double err = st.evaluate(ctrl);
    if (err < best_err) {
      best = ctrl;
      best_err = err;
    }
  }
  refine_dwell_times(st, best, best_err, eps);

  // Stochastic level/dwell perturbations with a shrinking step, interleaved
  // with further bisection passes.
  double step = 0.5;
  long stall = 0;
  while (!st.exhausted() && best_err > eps && !best.segments.empty()) {
    PiecewiseControl cand = best;
    const std::size_t i = rng.below(cand.segments.size());
    if (rng.uniform01() < 0.5) {
      cand.segments[i].dt = std::max(1e-12, cand.segments[i].dt * (1.0 + step * (2.0 * rng.uniform01() - 1.0)));
    } else {
      const double width = (sys.omega_hi - sys.omega_lo) * step;
      cand.segments[i].u = std::clamp(cand.segments[i].u + width * (2.0 * rng.uniform01() - 1.0),
                                      sys.omega_lo, sys.omega_hi);
    }
    const double err = st.evaluate(cand);
    if (err < best_err) {
      best = cand;
      best_err = err;
      stall = 0;
    } else if (++stall > 64) {
      step *= 0.5;
      stall = 0;
      if (step < 1e-6) refine_dwell_times(st, best, best_err, eps);
      if (step < 1e-9) break;
    }
  }

  SteeringResult result;
  result.expansions = st.expansions;
  result.terminal_error = best_err;
  if (best_err <= eps) {
    result.found = true;
    result.verdict = SteerVerdict::Found;
    result.control = best;
  } else {
    result.verdict = SteerVerdict::BudgetExhausted;
  }
  return result;
}

}  // namespace

SteeringResult steer(const SystemParams& params, const GroupPoint& p, const GroupPoint& q,
                     double eps, long budget, std::uint64_t seed) {
  if (!(eps > 0.0)) throw std::invalid_argument("steer: eps must be > 0");
  if (budget <= 0) throw std::invalid_argument("steer: budget must be > 0");

  SteeringResult result;
  if (distance(p, q) <= eps) {
    result.found = true;
    result.verdict = SteerVerdict::Found;
    result.terminal_error = distance(p, q);
    return result;
  }

  const NormalForm nf = conjugate_to_normal_form(params);
  const GroupPoint pn = nf.to_normal(p);
  const GroupPoint qn = nf.to_normal(q);
  // A reversed normal form runs backwards in time: a forward path p -> q of
  // the original system is a forward normal path psi(q) -> psi(p) with the
  // controls negated and the segments reversed.
  const GroupPoint& from = nf.reversed ? qn : pn;
  const GroupPoint& to = nf.reversed ? pn : qn;

  if (auto ctrl_n = analytic_steer(nf, from, to, eps)) {
    PiecewiseControl ctrl = nf.reversed ? ctrl_n->reversed() : *ctrl_n;
    ++result.expansions;
    const double err = distance(flow_endpoint(params, p, ctrl), q);
    if (err <= eps) {
      result.found = true;
      result.verdict = SteerVerdict::Found;
      result.control = std::move(ctrl);
      result.terminal_error = err;
      return result;
    }
  }

  if (certify_unreachable(nf, from, to, q, eps)) {
    result.verdict = SteerVerdict::BarrierCertified;
    result.terminal_error = distance(p, q);
    return result;
  }

  auto shot = shooting_search(params, p, q, eps, budget, Rng(seed), result.expansions);
  return shot;
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

namespace {

// Interior sample points of a description, plus the family-membership test
// (for the family cases two points belong to the same control set only if
// they share the abscissa).
struct SampledSet {
  std::vector<GroupPoint> points;
  bool family{false};
};

double clipped(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

SampledSet sample_interior(const Classification& cls, const VerificationOptions& opts,
                           Rng& rng) {
  SampledSet out;
  const Viewport& vp = opts.viewport;
  const int members = std::max(1, opts.grid);
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, VerticalLinesDesc>) {
          out.family = true;
          const double lo = std::max(g.interval.lo, vp.x0);
          const double hi = std::min(g.interval.hi, vp.x1);
          for (int i = 0; i < members; ++i) {
            const double x = lo + (hi - lo) * (i + 1.0) / (members + 1.0);
            const double ya = rng.uniform(vp.y0, 0.0);
            const double yb = rng.uniform(0.0, vp.y1);
            out.points.emplace_back(x, ya);
            out.points.emplace_back(x, yb);
          }
        } else if constexpr (std::is_same_v<T, VerticalSegmentsDesc>) {
          out.family = true;
          for (int i = 0; i < members; ++i) {
            const double x = clipped(vp.x0 + (vp.x1 - vp.x0) * (i + 1.0) / (members + 1.0),
                                     0.05, kInf);
            const double lo = g.y_lo.at(x), hi = g.y_hi.at(x);
            const double ya = lo + (hi - lo) * rng.uniform(0.1, 0.45);
            const double yb = lo + (hi - lo) * rng.uniform(0.55, 0.9);
            out.points.emplace_back(x, ya);
            out.points.emplace_back(x, yb);
          }
        } else if constexpr (std::is_same_v<T, LineDesc>) {
          for (int i = 0; i < members + 1; ++i) {
            const double x = std::exp(rng.uniform(std::log(vp.x0), std::log(vp.x1)));
            out.points.emplace_back(x, g.at(x));
          }
        } else if constexpr (std::is_same_v<T, WholeGroupDesc>) {
          for (int i = 0; i < members + 1; ++i)
            out.points.emplace_back(rng.uniform(vp.x0, vp.x1), rng.uniform(vp.y0, vp.y1));
        } else {
          static_assert(std::is_same_v<T, ConeDesc>);
          // Sample strictly inside the wedge: x in the viewport, slope
          // strictly between the bounds (clipped for unbounded sides).
          const double s_lo = g.lower_slope ? *g.lower_slope : -10.0;
          const double s_hi = g.upper_slope ? *g.upper_slope : 10.0;
          for (int i = 0; i < members + 1; ++i) {
            const double x = rng.uniform(std::max(vp.x0, 0.05), vp.x1);
            const double s = s_lo + (s_hi - s_lo) * rng.uniform(0.05, 0.95);
            out.points.emplace_back(x, g.apex_y + s * x);
          }
        }
      },
      cls.description.geometry);
  return out;
}

bool same_member(const Classification& cls, const GroupPoint& a, const GroupPoint& b,
                 double slack) {
  if (std::holds_alternative<VerticalLinesDesc>(cls.description.geometry) ||
      std::holds_alternative<VerticalSegmentsDesc>(cls.description.geometry))
    return std::abs(a.x - b.x) <= slack;
  return true;
}

}  // namespace

int effective_thread_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* cap = std::getenv("SOLVLIN_THREADS")) {
    const int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return n;
}

VerificationReport verify_control_set(const SystemParams& params, const Classification& cls,
                                      const VerificationOptions& opts) {
  VerificationReport report;
  Rng rng(opts.seed);
  const SampledSet set = sample_interior(cls, opts, rng);
  const std::size_t n = set.points.size();

  // Pair list: within-member round trips for the family cases, a cycle
  // through the sampled points otherwise.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (set.family) {
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      pairs.emplace_back(i, i + 1);
      pairs.emplace_back(i + 1, i);
    }
  } else {
    for (std::size_t i = 0; i < n && i < static_cast<std::size_t>(opts.grid); ++i)
      pairs.emplace_back(i, (i + 1) % n);
  }

  report.pairs_tested = static_cast<long>(pairs.size());
  report.pair_records.resize(pairs.size());

  const Rng pair_base(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  auto run_pair = [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    Rng task_rng = pair_base.fork(k);
    PairRecord rec;
    rec.from = set.points[i];
    rec.to = set.points[j];
    const SteeringResult sr = steer(params, rec.from, rec.to, opts.eps, opts.steer_budget,
                                    task_rng.next_u64());
    rec.steered = sr.found;
    rec.verdict = sr.verdict;
    rec.terminal_error = sr.terminal_error;
    rec.expansions = sr.expansions;
    report.pair_records[k] = rec;
  };

  const int workers = std::min<int>(effective_thread_count(opts.threads),
                                    std::max<int>(1, static_cast<int>(pairs.size())));
  if (workers <= 1) {
    for (std::size_t k = 0; k < pairs.size(); ++k) run_pair(k);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        for (std::size_t k = static_cast<std::size_t>(w); k < pairs.size();
             k += static_cast<std::size_t>(workers))
          run_pair(k);
      });
    for (auto& th : threads) th.join();
  }

  for (const auto& rec : report.pair_records) {
    if (rec.steered) {
      ++report.pairs_steered;
      report.max_terminal_error = std::max(report.max_terminal_error, rec.terminal_error);
    }
  }

  // Invariance along the flagged direction: negatively invariant sets are
  // tested with the time-reversed system (forward reversed time is backward
  // original time).
  const bool backward = cls.description.invariance == Invariance::Negative;
  const SystemParams flow_sys = backward ? time_reverse(params) : params;
  for (int s = 0; s < opts.invariance_samples && n > 0; ++s) {
    const GroupPoint start = set.points[rng.below(n)];
    const double horizon = rng.uniform(0.05, opts.horizon);
    const PiecewiseControl ctrl = random_control(flow_sys, horizon, rng);
    bool violated = false;
    GroupPoint exit_point = start;
    double exit_t = 0.0;
    try {
      const Trajectory traj = flow_piecewise(flow_sys, start, ctrl, 4);
      for (const auto& sample : traj.samples) {
        if (!membership(cls.description, sample.p, opts.invariance_slack) ||
            !same_member(cls, start, sample.p, opts.invariance_slack)) {
          violated = true;
          exit_point = sample.p;
          exit_t = sample.t;
          break;
        }
      }
    } catch (const std::exception&) {
      violated = true;  // flow blew up out of the half-plane: count it
    }
    if (violated) {
      ++report.invariance_violations;
      if (report.escape_witnesses.size() < 16)
        report.escape_witnesses.push_back({start, ctrl, exit_t, exit_point});
    }
  }
  return report;
}

double decay_to_cone_check(const SystemParams& params, const GroupPoint& p, int n,
                           std::uint64_t seed) {
  const Classification cls = classify(params);
  if (cls.case_id != 5 || cls.normal_form.reversed)
    throw std::invalid_argument("decay_to_cone_check needs a Cone system with b < 0");
  const NormalForm& nf = cls.normal_form;
  const ConeDesc cone = *cls.normal_cone;
  const GroupPoint pn = nf.to_normal(p);

  // Signed vertical gap to the cone, positive outside; pick the side the
  // point violates (or the larger one when inside/on the boundary).
  const auto gap = [&](const GroupPoint& z) {
    double g = -kInf;
    if (cone.lower_slope) g = std::max(g, *cone.lower_slope * z.x - z.y);
    if (cone.upper_slope) g = std::max(g, z.y - *cone.upper_slope * z.x);
    return g;
  };
  const double g0 = gap(pn);
  const double b = nf.params.b;

  double max_residual = -kInf;
  Rng base(seed);
  for (int i = 0; i < n; ++i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    const double horizon = rng.uniform(0.1, 5.0);
    const PiecewiseControl ctrl = random_control(nf.params, horizon, rng);
    const Trajectory traj = flow_piecewise(nf.params, pn, ctrl, 8);
    for (const auto& s : traj.samples)
      max_residual = std::max(max_residual, gap(s.p) - std::exp(b * s.t) * g0);
  }
  return max_residual;
}

}  // namespace solvlin
