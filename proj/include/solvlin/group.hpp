// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_GROUP_HPP
#define SOLVLIN_GROUP_HPP

#include <cmath>
#include <stdexcept>

namespace solvlin {

/// A point of the group G = R+ x R (the open right half-plane).
///
/// The product is (x1,y1)*(x2,y2) = (x1*x2, y2 + x2*y1), identity (1,0).
/// Construction enforces x > 0 and finiteness.
struct GroupPoint {
  double x{1.0};
  double y{0.0};

  GroupPoint() = default;
  GroupPoint(double x_, double y_) : x(x_), y(y_) {
    if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("GroupPoint requires finite coordinates with x > 0");
  }
};

/// Velocity at a point of G, in the ambient (x,y) coordinates.
struct TangentVector {
  double vx{0.0};
  double vy{0.0};
};

GroupPoint group_product(const GroupPoint& p, const GroupPoint& q);
GroupPoint group_inverse(const GroupPoint& p);
GroupPoint group_identity();

/// Group automorphism psi(x,y) = (x, c*(x-1) + d*y), d != 0.
///
/// These maps are affine in (x,y); the differential is constant,
/// dpsi = [[1,0],[c,d]].  Composition and inversion follow from
///   (c2,d2) o (c1,d1) = (c2 + d2*c1, d2*d1)
///   (c,d)^-1          = (-c/d, 1/d)
/// which are frozen here because they are used throughout the
/// normal-form machinery.
struct Automorphism {
  double c{0.0};
  double d{1.0};

  Automorphism() = default;
  Automorphism(double c_, double d_) : c(c_), d(d_) {
    if (d == 0.0 || !std::isfinite(c) || !std::isfinite(d))
      throw std::invalid_argument("Automorphism requires finite (c, d) with d != 0");
  }

  GroupPoint apply(const GroupPoint& p) const {
    return GroupPoint(p.x, c * (p.x - 1.0) + d * p.y);
  }

  /// Push a tangent vector through the (constant) differential.
  TangentVector apply_tangent(const TangentVector& v) const {
    return TangentVector{v.vx, c * v.vx + d * v.vy};
  }

  Automorphism inverse() const { return Automorphism(-c / d, 1.0 / d); }

  GroupPoint apply_inverse(const GroupPoint& p) const {
    return GroupPoint(p.x, (p.y - c * (p.x - 1.0)) / d);
  }
};

Automorphism compose(const Automorphism& outer, const Automorphism& inner);

}  // namespace solvlin

#endif
