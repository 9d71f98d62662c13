#pragma once

// Verification suites driven by `qlinset verify` and the acceptance runner.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlinset/gf.hpp"

namespace qlinset {

struct RunConfig {
  FieldPtr field;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  /// Unset means the suite default.
  std::optional<bool> exhaustive;
  std::optional<std::uint64_t> samples;
  bool all_mu = false;
};

struct SuiteReport {
  std::string suite;
  bool passed = false;
  /// True when a guard (feasibility or precondition) stopped the suite.
  bool guard_violation = false;
  nlohmann::json checks = nlohmann::json::object();
  std::vector<std::string> falsifiers;
  /// CSV companion (survey suites only).
  std::optional<std::string> csv;
  double seconds = 0;
};

/// bounds, adjoint, erelations, trace5, pseudoalg, thm-n4, thm-main-q2,
/// new-linset, survey-n4, properties.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite. Library errors raised by a
/// guard are reported through guard_violation rather than thrown.
SuiteReport run_suite(const std::string& name, const RunConfig& config);

/// Versioned report: schema, command, config, result. Timing appears only
/// under "timing" and "seconds" keys.
nlohmann::json report_json(const std::string& command, const RunConfig& config, const SuiteReport& report);

}  // namespace qlinset
