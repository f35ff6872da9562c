// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#include "solvlin/normal_form.hpp"

namespace solvlin {

const char* to_string(NormalFormTag tag) {
  switch (tag) {
    case NormalFormTag::VerticalDrift: return "vertical_drift";
    case NormalFormTag::Segment: return "segment";
    case NormalFormTag::Saddle: return "saddle";
    case NormalFormTag::Shear: return "shear";
    case NormalFormTag::Cone: return "cone";
  }
  return "?";
}

int classification_case(const SystemParams& params) {
  const double gamma = params.a * params.alpha + params.b * params.beta;
  if (params.alpha == 0.0) return gamma == 0.0 ? 1 : 2;
  if (gamma == 0.0) return 3;
  return params.b == 0.0 ? 4 : 5;
}

NormalForm conjugate_to_normal_form(const SystemParams& params) {
  NormalForm nf;
  switch (classification_case(params)) {
    case 1:
      // alpha = b = 0 already; the system is its own normal form.
      nf.tag = NormalFormTag::VerticalDrift;
      nf.psi = Automorphism(0.0, 1.0);
      nf.params = params;
      break;
    case 2: {
      nf.tag = NormalFormTag::Segment;
      nf.reversed = params.b > 0.0;
      const SystemParams base = nf.reversed ? time_reverse(params) : params;
      // (c,d) = (a,b) sends the drift coefficient a to zero and keeps b.
      nf.psi = Automorphism(base.a, base.b);
      nf.params = transform_params(base, nf.psi);
      break;
    }
    case 3:
      nf.tag = NormalFormTag::Saddle;
      // Kills the invariant field's y component: beta -> c*alpha + beta = 0.
      nf.psi = Automorphism(-params.beta / params.alpha, 1.0);
      nf.params = transform_params(params, nf.psi);
      break;
    case 4:
      nf.tag = NormalFormTag::Shear;
      // d = 1/a normalizes the drift to (x-1); c then has to be
      // -beta/(a*alpha), not -beta/alpha, for the u-term to cancel.
      nf.psi = Automorphism(-params.beta / (params.a * params.alpha), 1.0 / params.a);
      nf.params = transform_params(params, nf.psi);
      break;
    case 5: {
      nf.tag = NormalFormTag::Cone;
      nf.reversed = params.b > 0.0;
      const SystemParams base = nf.reversed ? time_reverse(params) : params;
      const double gamma = base.a * base.alpha + base.b * base.beta;
      nf.psi = Automorphism(base.a / gamma, base.b / gamma);
      nf.params = transform_params(base, nf.psi);
      break;
    }
  }
  return nf;
}

}  // namespace solvlin
