#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kelab/domain.hpp"

namespace kelab {

using json = nlohmann::json;

/// Outcome of one suite run. pass <=> max_residual <= params["tol"].
struct VerificationReport {
  std::string suite;
  json domain;   // {kind, params} or null
  json params;   // K, n, samples, seed, tol, ...
  json samples;  // [{point, residuals: {name: value}}]
  double max_residual = 0.0;
  bool pass = false;
  long runtime_ms = 0;
  json details;  // suite-specific tables and notes

  json to_json() const;
};

struct SuiteInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> operations;
};

const std::vector<SuiteInfo>& suite_catalog();

/// {kind, params}; Product carries params.factors.
json domain_to_json(const DomainModel& d);
/// Throws ConfigError on unknown kinds or bad parameters.
DomainModel domain_from_json(const json& j);

/// Config keys: domain ({kind, params} or a kind name with p/q/m/n beside it), ricci (K),
/// n, samples, seed, tol; suite-specific extras are documented in the README.
/// Throws ConfigError for unknown suites and invalid settings (including tol <= 0).
VerificationReport run_suite(const std::string& name, const json& config);

/// Default run list used by run_all when the config has no "suites" array.
json default_run_list();

/// Runs every entry of the config, writes <out_dir>/<suite>.json per run and
/// <out_dir>/summary.json. Returns 0 if all pass, 1 on a verification failure or
/// suite error, 2 when the config cannot be used. seed_override replaces every seed.
int run_all(const std::string& config_path, int jobs, std::ostream& log,
            std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace kelab
