#pragma once

#include <string>
#include <vector>

#include <besovlab/io.hpp>

namespace besovlab::cli {

enum ExitCode { ok = 0, usage = 2, not_covered = 3, io_failure = 4 };

// The resolved config is echoed as report["config"]; csv holds the per-command table (may be
// empty). threads never enters the report.
struct RunResult {
  int exit_code = ok;
  Json report;
  std::string csv;
};

const std::vector<std::string>& commands();

// Dotted or slash path; the value is parsed as JSON and falls back to a plain string.
void apply_override(Json& config, const std::string& assignment);

// Fills defaults, runs the command and builds the report. Files named in the config (a tree for
// `norm`) must already be inlined. Throws ConfigError on malformed input.
RunResult run(const std::string& command, const Json& config, unsigned threads, bool strict = false);

}  // namespace besovlab::cli
