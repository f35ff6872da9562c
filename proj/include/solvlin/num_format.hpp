// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_NUM_FORMAT_HPP
#define SOLVLIN_NUM_FORMAT_HPP

#include <string>

namespace solvlin {

/// Shortest decimal string that parses back to exactly the same double
/// (tries %.15g, %.16g, %.17g in turn).  Used for CSV output.
std::string format_double(double v);

/// Fixed-precision formatting for SVG coordinates (deterministic bytes).
std::string format_fixed(double v, int digits = 3);

}  // namespace solvlin

#endif
