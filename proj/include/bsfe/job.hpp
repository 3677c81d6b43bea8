#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bsfe {

struct JobOptions {
  int threads = 1;
  std::optional<std::size_t> maxUnknowns;
};

/// Exit codes of a job run.
enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitRefuted = 2, kExitNotFound = 3 };

struct JobOutcome {
  nlohmann::ordered_json report;
  int exitCode = kExitOk;
};

/// Runs a job given as JSON text. Relative semigroup paths resolve against
/// baseDir. Input errors are reported in the outcome, never thrown.
JobOutcome runJobText(const std::string& text, const std::string& baseDir, const JobOptions& options = {});
JobOutcome runJobFile(const std::string& path, const JobOptions& options = {});

/// Hex SHA-256 of a string.
std::string sha256Hex(const std::string& data);

/// Plain-text rendering of a report.
std::string renderTable(const nlohmann::ordered_json& report);

const std::vector<std::string>& jobTasks();
std::string toolVersion();

}  // namespace bsfe
