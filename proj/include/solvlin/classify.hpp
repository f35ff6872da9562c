// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_CLASSIFY_HPP
#define SOLVLIN_CLASSIFY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "solvlin/flows.hpp"

namespace solvlin {

/// Slope of the flow-invariant ray r_u = {y = m_u x}, m_u = u/(u*alpha - b).
struct RaySlope {
  double u{0.0};
  double m{0.0};
};

/// m_u for the Cone shape.  Throws on the singular input u*alpha == b
/// (vertical asymptote of m).
RaySlope ray_slope(double u, double alpha, double b);

/// d m_u / du = -b / (u*alpha - b)^2.
double ray_slope_derivative(double u, double alpha, double b);

/// Interval with open/closed endpoint flags; lo = -inf / hi = +inf encode
/// unbounded sides (the corresponding flag is then meaningless).
struct Interval {
  double lo{0.0};
  double hi{0.0};
  bool lo_closed{false};
  bool hi_closed{false};

  bool contains(double v, double slack = 0.0) const;
  bool empty() const;
};

/// Family {x} x R of vertical-line control sets, one per x in the open
/// interval I.  Points with x outside I are not claimed by any member and are
/// reported unclassified.  Each line is invariant in both time directions.
struct VerticalLinesDesc {
  Interval interval;
};

/// y(x) = slope*x + intercept; the endpoint curves and midlines of the
/// segment family, and general boundary lines, are all affine.
struct AffineLine {
  double slope{0.0};
  double intercept{0.0};

  double at(double x) const { return slope * x + intercept; }
};

/// Family of vertical-segment control sets {x} x [y_lo(x), y_hi(x)], one per
/// x > 0.  All segments cross the base line y = -a/b*(x-1).
struct VerticalSegmentsDesc {
  AffineLine y_lo;
  AffineLine y_hi;
  AffineLine base;
};

/// Single control set with empty interior: the line y = beta/alpha*(x-1)
/// intersected with G.
struct LineDesc {
  double slope{0.0};

  double at(double x) const { return slope * (x - 1.0); }
};

struct WholeGroupDesc {};

/// Single control set with nonempty interior: a cone (wedge) whose edge sits
/// on (0, apex_y) in the closure of G.  Boundary lines y = apex_y + slope*x
/// are part of the set (the set is closed in G); a missing bound means that
/// side is the whole half plane.  At least one bound is present.
struct ConeDesc {
  double apex_y{0.0};
  std::optional<double> lower_slope;
  std::optional<double> upper_slope;
};

enum class Invariance { Positive, Negative, Invariant, NoneClaimed };

const char* to_string(Invariance inv);

using ControlSetGeometry = std::variant<VerticalLinesDesc, VerticalSegmentsDesc, LineDesc,
                                        WholeGroupDesc, ConeDesc>;

struct ControlSetDescription {
  ControlSetGeometry geometry;
  Invariance invariance{Invariance::NoneClaimed};
};

/// Full classification result: case number 1..5, the control-set geometry in
/// original coordinates, the conjugation data, and near-degeneracy warnings.
struct Classification {
  int case_id{0};
  bool larc{false};
  ControlSetDescription description;
  NormalForm normal_form;
  /// Cone geometry in normal coordinates (apex at the origin); only set for
  /// case 5.
  std::optional<ConeDesc> normal_cone;
  std::vector<std::string> warnings;
};

/// B = {u in Omega : u*alpha - b > 0}, the controls whose rays fill the cone.
/// Requires the Cone normal form (so b < 0); never empty.  The endpoint where
/// u*alpha = b is excluded (m is undefined there).
Interval admissible_ray_set(const NormalForm& nf);

/// The cone control set of the Cone normal form, in normal coordinates:
/// apex (0,0), boundary slopes m_{u_lo} and/or m_{u_hi}, both boundaries
/// closed.  One bound is dropped when b lies in alpha*Omega (the ray slopes
/// are unbounded on that side).
ConeDesc cone_region(const NormalForm& nf);

/// The classification theorem: exact control-set geometry of the system by
/// the five-way case split, in original coordinates.
Classification classify(const SystemParams& params);

/// Point query against a description; closed/open boundary flags are honored
/// and `slack` expands the set (used by the empirical invariance checks).
/// Line membership is |y - slope*(x-1)| <= 1e-12*(1+|y|) + slack.
bool membership(const ControlSetDescription& desc, const GroupPoint& p, double slack = 0.0);

/// Time for the constant-control flow with steering control u to carry the
/// ray r_{u1} onto the ray r_{u2}:
///   t0 = ln((m_{u1} - m_u)/(m_{u2} - m_u)) / (u*alpha - b) > 0.
/// Requires the Cone normal form, u in B, and m_{u2} strictly between m_{u1}
/// and m_u; returns nullopt when there is no crossing (the slope map g_u is
/// monotone between its endpoints).
std::optional<double> transition_time(const NormalForm& nf, double u1, double u2, double u);

}  // namespace solvlin

#endif
