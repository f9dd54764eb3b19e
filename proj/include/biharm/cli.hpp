// Batch front end: `biharm verify|sweep|identities`.
//
// Exit codes: 0 success, 1 internal error or a verdict/identity mismatch,
// 2 configuration or parse error, 3 invalid submersion.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biharm/biharmonic.hpp"
#include "biharm/catalog.hpp"

namespace biharm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kInvalidSubmersion = 3 };

struct RunConfig {
  std::string command;
  std::string entry;  // catalog name, "custom", or empty (all entries)
  std::vector<double> m, l, a, b;  // grid lists; empty means the default grid
  std::optional<BCVParams> bcv;    // identities on a bare BCV space
  std::optional<std::size_t> points;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string format;  // json or csv; empty picks the command default
  std::string out;     // empty writes to the output stream
  unsigned jobs = 1;
  std::map<std::string, std::string> custom;  // g11..g33, pi1, pi2, h11, h12, h22, x/y/z ranges
};

/// Parses a flat `key = value` document (`#` starts a comment) into `config`.
/// Throws ConfigError.
void apply_config_text(const std::string& text, RunConfig& config);

/// Builds a submersion from the custom expression keys; throws ConfigError or ParseError.
CatalogEntry custom_entry(const RunConfig& config);

/// Runs a parsed configuration. Reports go to `out` (or the configured path),
/// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (including --config) and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace biharm::cli
