// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_JSON_IO_HPP
#define SOLVLIN_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "solvlin/reach.hpp"

namespace solvlin {

/// Parse {"a":, "b":, "alpha":, "beta":, "omega":[lo,hi]} into SystemParams.
/// Throws std::invalid_argument with a diagnostic naming the violated
/// invariant or missing field.
SystemParams params_from_json(const nlohmann::json& doc);
SystemParams params_from_json_text(const std::string& text);

nlohmann::json params_to_json(const SystemParams& params);

/// The classify report: {"case":1..5, "description":{...}, "invariance":...,
/// "larc":bool, "normal_form":{...}, "warnings":[...], "system":{...}}, all
/// geometry in original coordinates plus the normal-form geometry and psi for
/// auditability.
nlohmann::json classification_to_json(const SystemParams& params, const Classification& cls);

nlohmann::json control_to_json(const PiecewiseControl& ctrl);
PiecewiseControl control_from_json(const nlohmann::json& doc);

nlohmann::json steering_to_json(const SteeringResult& result);

/// Verification report plus per-pair records and the options used (defaults
/// included for reproducibility).
nlohmann::json report_to_json(const VerificationReport& report, const VerificationOptions& opts);

}  // namespace solvlin

#endif
