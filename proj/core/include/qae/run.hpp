#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qae/caps.hpp"
#include "qae/tolerances.hpp"
#include "qae/universal.hpp"

#include <json.hpp>

namespace qae {

// Exit-code contract of the tool: 2 config, 3 cap, 4 I/O.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t dim = 2;
  Budget budget{12, 100000};
  Dyadic eps_reg = Dyadic::pow2(-10);
  Tolerances tol;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  std::string output_path;
  CapConstants cap_constants;

  void validate() const;
};

// Flat key=value config text; unknown keys are errors. CLI flags override
// file values, environment variables (QAE_ prefix) sit in between.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);
void apply_env_overrides(RunConfig& cfg);

// FNV-1a content hash of a snapshot's canonical serialization.
std::string snapshot_digest(const EnumerationSnapshot& snapshot);

struct RunResult {
  nlohmann::json report;
  bool all_ok = true;
};

// Fixed suite order: enumerate, mu, then the requested checks. Deterministic
// given (config, seed); timing_ms is the only nondeterministic field.
RunResult run(const RunConfig& cfg);

}  // namespace qae
