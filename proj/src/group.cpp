// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/group.hpp"

namespace solvlin {

GroupPoint group_product(const GroupPoint& p, const GroupPoint& q) {
  // (x1,y1)*(x2,y2) = (x1*x2, y2 + x2*y1); closure holds since x1*x2 > 0.
  return GroupPoint(p.x * q.x, q.y + q.x * p.y);
}

GroupPoint group_inverse(const GroupPoint& p) {
  return GroupPoint(1.0 / p.x, -p.y / p.x);
}

GroupPoint group_identity() { return GroupPoint(1.0, 0.0); }

Automorphism compose(const Automorphism& outer, const Automorphism& inner) {
  return Automorphism(outer.c + outer.d * inner.c, outer.d * inner.d);
}

}  // namespace solvlin
