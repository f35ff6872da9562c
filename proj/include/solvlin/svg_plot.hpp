// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_SVG_PLOT_HPP
#define SOLVLIN_SVG_PLOT_HPP

#include <cstdint>
#include <string>

#include "solvlin/reach.hpp"

namespace solvlin {

struct PlotOptions {
  Viewport viewport;
  int width{640};
  int height{480};
  /// When > 0, overlay this many sampled trajectories from (1,0) with
  /// arrowheads indicating the time direction.
  int sample_trajectories{0};
  double horizon{5.0};
  std::uint64_t seed{0};
};

/// Deterministic SVG figure of a classified system: shaded control-set region
/// clipped to the viewport, boundary curves, the identity (1,0), the cone
/// apex when present, and optional sampled trajectories.  Mathematical y-up
/// orientation; byte-identical output for identical inputs.
std::string render_svg(const SystemParams& params, const Classification& cls,
                       const PlotOptions& opts);

}  // namespace solvlin

#endif
