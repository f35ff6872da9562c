// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_REACH_HPP
#define SOLVLIN_REACH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvlin/classify.hpp"

namespace solvlin {

/// Rectangle used to clip unbounded sets for sampling and plotting.
struct Viewport {
  double x0{0.1};
  double x1{10.0};
  double y0{-10.0};
  double y1{10.0};
};

/// How a steering attempt ended.  BarrierCertified means an analytic
/// inequality forbids reaching any point within eps of the target, which is a
/// proof of failure; BudgetExhausted is merely a search failure.
enum class SteerVerdict { Found, BarrierCertified, BudgetExhausted };

const char* to_string(SteerVerdict v);

struct SteeringResult {
  bool found{false};
  PiecewiseControl control;
  double terminal_error{0.0};
  long expansions{0};
  SteerVerdict verdict{SteerVerdict::BudgetExhausted};
};

/// Monte-Carlo sample of the positive orbit of `p`: `n` random
/// piecewise-constant controls over [0, horizon], dwell times uniform in
/// (0, horizon/4], levels biased toward the bang-bang set {u_lo, 0, u_hi}
/// (probability 3/4) with the rest uniform in Omega.  Deterministic given the
/// seed.
std::vector<Trajectory> reach_sample_trajectories(const SystemParams& params,
                                                  const GroupPoint& p, double horizon,
                                                  int n, std::uint64_t seed);

/// Endpoints plus interior samples of reach_sample_trajectories.
struct SampleCloud {
  std::vector<GroupPoint> endpoints;
  std::vector<GroupPoint> samples;
};

SampleCloud reach_sample(const SystemParams& params, const GroupPoint& p, double horizon,
                         int n, std::uint64_t seed);

/// Search for a control carrying p to within eps of q in positive time.
///
/// Tries, in order: exact analytic constructions on the normal form (constant
/// control matching the x coordinate plus a drift phase, or ray-to-ray motion
/// through the cone with scaling along rays), analytic barrier certificates
/// that rule the target out, and finally random shooting with bisection
/// refinement of dwell times.  A returned control always replays to within
/// eps under the closed-form flow.
SteeringResult steer(const SystemParams& params, const GroupPoint& p, const GroupPoint& q,
                     double eps, long budget, std::uint64_t seed);

struct EscapeWitness {
  GroupPoint start;
  PiecewiseControl control;
  double t{0.0};
  GroupPoint exit_point;
};

struct PairRecord {
  GroupPoint from;
  GroupPoint to;
  bool steered{false};
  SteerVerdict verdict{SteerVerdict::BudgetExhausted};
  double terminal_error{0.0};
  long expansions{0};
};

struct VerificationReport {
  long pairs_tested{0};
  long pairs_steered{0};
  long invariance_violations{0};
  std::vector<EscapeWitness> escape_witnesses;
  double max_terminal_error{0.0};
  std::vector<PairRecord> pair_records;

  bool clean() const {
    return pairs_steered == pairs_tested && invariance_violations == 0;
  }
};

struct VerificationOptions {
  int grid{10};               ///< pairs attempted (member sets sampled for the family cases)
  double eps{1e-2};           ///< steering tolerance
  std::uint64_t seed{0};
  double horizon{5.0};        ///< invariance test horizon
  int invariance_samples{1000};
  double invariance_slack{1e-9};
  Viewport viewport;          ///< clip window for unbounded sets
  int threads{0};             ///< 0 = hardware concurrency (capped by SOLVLIN_THREADS)
  long steer_budget{20000};
};

/// Empirical check of the control-set definition on a classified description:
/// approximate controllability between sampled interior points and invariance
/// along the invariance-direction flows.  Violations are findings collected
/// with witnesses, not exceptions.  Pairs run in parallel; the report is
/// merged in pair order, so it is deterministic for a fixed seed.
VerificationReport verify_control_set(const SystemParams& params, const Classification& cls,
                                      const VerificationOptions& opts);

/// For a Cone system with b < 0 and p outside the cone: checks that along n
/// random continuations the vertical gap to the cone decays at least like
/// e^{bt} times the initial gap.  Returns the maximum of
/// gap(t) - e^{bt}*gap(0) over all samples (<= 0 up to roundoff when the
/// absorption inequality holds).
double decay_to_cone_check(const SystemParams& params, const GroupPoint& p, int n,
                           std::uint64_t seed);

/// Effective worker count: min(requested or hardware, SOLVLIN_THREADS cap).
int effective_thread_count(int requested);

}  // namespace solvlin

#endif
