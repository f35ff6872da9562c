// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace solvlin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNearDegenerate = 1e-9;

}  // namespace

const char* to_string(Invariance inv) {
  switch (inv) {
    case Invariance::Positive: return "positively-invariant";
    case Invariance::Negative: return "negatively-invariant";
    case Invariance::Invariant: return "invariant";
    case Invariance::NoneClaimed: return "none-claimed";
  }
  return "?";
}

RaySlope ray_slope(double u, double alpha, double b) {
  const double denom = u * alpha - b;
  if (denom == 0.0)
    throw std::invalid_argument("ray_slope: u*alpha == b (vertical asymptote of m)");
  return RaySlope{u, u / denom};
}

double ray_slope_derivative(double u, double alpha, double b) {
  const double denom = u * alpha - b;
  return -b / (denom * denom);
}

bool Interval::contains(double v, double slack) const {
  if (lo_closed ? v < lo - slack : v <= lo - slack) return false;
  if (hi_closed ? v > hi + slack : v >= hi + slack) return false;
  return true;
}

bool Interval::empty() const {
  if (lo > hi) return true;
  if (lo == hi) return !(lo_closed && hi_closed);
  return false;
}

namespace {

// Open subset of (0, inf) where slope*x + intercept is strictly positive.
Interval positive_set(const AffineLine& line) {
  if (line.slope > 0.0) {
    const double root = -line.intercept / line.slope;
    return Interval{std::max(0.0, root), kInf, false, false};
  }
  if (line.slope < 0.0) {
    const double root = -line.intercept / line.slope;
    if (root <= 0.0) return Interval{0.0, 0.0, false, false};  // empty
    return Interval{0.0, root, false, false};
  }
  if (line.intercept > 0.0) return Interval{0.0, kInf, false, false};
  return Interval{0.0, 0.0, false, false};
}

Interval negative_set(const AffineLine& line) {
  return positive_set(AffineLine{-line.slope, -line.intercept});
}

Interval intersect_open(const Interval& a, const Interval& b) {
  return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi), false, false};
}

// Maximal interval of x where the drift-only rate a(x-1) + u x beta takes
// both signs as u ranges over Omega.  The rate is affine in u, so only the
// envelope lines at the endpoints of Omega matter.
Interval vertical_lines_interval(const SystemParams& p) {
  const AffineLine at_lo{p.a + p.omega_lo * p.beta, -p.a};
  const AffineLine at_hi{p.a + p.omega_hi * p.beta, -p.a};
  const AffineLine& upper = p.beta > 0.0 ? at_hi : at_lo;
  const AffineLine& lower = p.beta > 0.0 ? at_lo : at_hi;
  return intersect_open(positive_set(upper), negative_set(lower));
}

}  // namespace

Interval admissible_ray_set(const NormalForm& nf) {
  if (nf.tag != NormalFormTag::Cone)
    throw std::invalid_argument("admissible_ray_set needs the Cone shape");
  const SystemParams& np = nf.params;
  const double r = np.b / np.alpha;  // the excluded control level, m undefined there
  Interval B{np.omega_lo, np.omega_hi, true, true};
  if (np.alpha > 0.0) {
    if (r >= np.omega_lo) {
      B.lo = r;
      B.lo_closed = false;
    }
  } else {
    if (r <= np.omega_hi) {
      B.hi = r;
      B.hi_closed = false;
    }
  }
  return B;
}

ConeDesc cone_region(const NormalForm& nf) {
  if (nf.tag != NormalFormTag::Cone)
    throw std::invalid_argument("cone_region needs the Cone shape");
  const SystemParams& np = nf.params;
  const double r = np.b / np.alpha;
  const bool b_in_alpha_omega = r >= np.omega_lo && r <= np.omega_hi;

  ConeDesc cone;
  cone.apex_y = 0.0;
  if (!b_in_alpha_omega) {
    cone.lower_slope = ray_slope(np.omega_lo, np.alpha, np.b).m;
    cone.upper_slope = ray_slope(np.omega_hi, np.alpha, np.b).m;
  } else if (np.alpha > 0.0) {
    cone.upper_slope = ray_slope(np.omega_hi, np.alpha, np.b).m;
  } else {
    cone.lower_slope = ray_slope(np.omega_lo, np.alpha, np.b).m;
  }
  return cone;
}

namespace {

// Pull a cone with apex at the normal-coordinates origin back through psi:
// the boundary ray y = m x maps to the line y = ((m - c)x + c)/d, and a
// negative d swaps which side is the lower one.
ConeDesc pull_back_cone(const ConeDesc& normal, const Automorphism& psi) {
  ConeDesc out;
  out.apex_y = psi.c / psi.d;
  const auto map_slope = [&](double m) { return (m - psi.c) / psi.d; };
  if (psi.d > 0.0) {
    if (normal.lower_slope) out.lower_slope = map_slope(*normal.lower_slope);
    if (normal.upper_slope) out.upper_slope = map_slope(*normal.upper_slope);
  } else {
    if (normal.upper_slope) out.lower_slope = map_slope(*normal.upper_slope);
    if (normal.lower_slope) out.upper_slope = map_slope(*normal.lower_slope);
  }
  return out;
}

}  // namespace

Classification classify(const SystemParams& params) {
  Classification cls;
  cls.case_id = classification_case(params);
  cls.larc = larc(params);
  cls.normal_form = conjugate_to_normal_form(params);
  const NormalForm& nf = cls.normal_form;

  const double gamma = params.a * params.alpha + params.b * params.beta;
  if (params.alpha != 0.0 && std::abs(params.alpha) < kNearDegenerate)
    cls.warnings.push_back("|alpha| is nonzero but below 1e-9; the case split treats it "
                           "as nonzero (near-degenerate input)");
  if (gamma != 0.0 && std::abs(gamma) < kNearDegenerate)
    cls.warnings.push_back("|a*alpha + b*beta| is nonzero but below 1e-9; the case split "
                           "treats it as nonzero (near-degenerate input)");

  switch (cls.case_id) {
    case 1: {
      VerticalLinesDesc desc;
      desc.interval = vertical_lines_interval(params);
      cls.description = {desc, Invariance::Invariant};
      break;
    }
    case 2: {
      // Normal-coordinate segments are {x} x [k1 x, k2 x] where the k's are
      // the extreme equilibria -u beta over the (possibly reversed) range.
      const SystemParams base = nf.reversed ? time_reverse(params) : params;
      const double k_a = -base.omega_lo * base.beta;
      const double k_b = -base.omega_hi * base.beta;
      const double k1 = std::min(k_a, k_b);
      const double k2 = std::max(k_a, k_b);
      const double c = nf.psi.c;  // = base.a
      const double d = nf.psi.d;  // = base.b < 0, so the pullback flips order
      VerticalSegmentsDesc desc;
      desc.y_lo = AffineLine{(k2 - c) / d, c / d};
      desc.y_hi = AffineLine{(k1 - c) / d, c / d};
      desc.base = AffineLine{-params.a / params.b, params.a / params.b};
      cls.description = {desc, nf.reversed ? Invariance::Negative : Invariance::Positive};
      break;
    }
    case 3: {
      LineDesc desc;
      desc.slope = params.beta / params.alpha;
      cls.description = {desc, Invariance::Invariant};
      break;
    }
    case 4:
      cls.description = {WholeGroupDesc{}, Invariance::Invariant};
      break;
    case 5: {
      const ConeDesc normal = cone_region(nf);
      cls.normal_cone = normal;
      cls.description = {pull_back_cone(normal, nf.psi),
                         nf.reversed ? Invariance::Negative : Invariance::Positive};
      break;
    }
  }
  return cls;
}

bool membership(const ControlSetDescription& desc, const GroupPoint& p, double slack) {
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, VerticalLinesDesc>) {
          return g.interval.contains(p.x, slack);
        } else if constexpr (std::is_same_v<T, VerticalSegmentsDesc>) {
          return p.y >= g.y_lo.at(p.x) - slack && p.y <= g.y_hi.at(p.x) + slack;
        } else if constexpr (std::is_same_v<T, LineDesc>) {
          return std::abs(p.y - g.at(p.x)) <= 1e-12 * (1.0 + std::abs(p.y)) + slack;
        } else if constexpr (std::is_same_v<T, WholeGroupDesc>) {
          return true;
        } else {
          static_assert(std::is_same_v<T, ConeDesc>);
          if (g.lower_slope && p.y < g.apex_y + *g.lower_slope * p.x - slack) return false;
          if (g.upper_slope && p.y > g.apex_y + *g.upper_slope * p.x + slack) return false;
          return true;
        }
      },
      desc.geometry);
}

std::optional<double> transition_time(const NormalForm& nf, double u1, double u2, double u) {
  if (nf.tag != NormalFormTag::Cone)
    throw std::invalid_argument("transition_time needs the Cone shape");
  const SystemParams& np = nf.params;
  const double rate = u * np.alpha - np.b;
  if (rate <= 0.0)
    throw std::invalid_argument("transition_time: steering control must lie in B");
  const double m1 = ray_slope(u1, np.alpha, np.b).m;
  const double m2 = ray_slope(u2, np.alpha, np.b).m;
  const double mu = ray_slope(u, np.alpha, np.b).m;
  // g_u(t) = m_u + e^{-t rate}(m1 - m_u) runs monotonically from m1 to m_u;
  // it crosses m2 only when m2 lies strictly between the two.
  if (!((m1 < m2 && m2 < mu) || (mu < m2 && m2 < m1))) return std::nullopt;
  return std::log((m1 - mu) / (m2 - mu)) / rate;
}

}  // namespace solvlin
