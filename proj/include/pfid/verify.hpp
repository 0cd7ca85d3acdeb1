#pragma once

// Seeded randomized property suites.
//
// Each suite samples `trials` random instances per dimension and evaluates a
// set of inequality or identity checks. A check produces a slack (>= 0 when
// the property holds exactly) and carries its own tolerance; the report
// margin of a check is its slack rescaled to the suite tolerance, so that a
// report has failures exactly when worst_margin < -tolerance.
//
// Trial t at dimension d draws everything from derive_seed(master_seed, t, d),
// which makes results independent of execution order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfid/io.hpp"
#include "pfid/tolerance.hpp"

namespace pfid {

struct SuiteConfig {
  std::string suite;
  std::size_t trials = 0;
  std::vector<std::size_t> dims{2};
  std::size_t env_dim = 2;
  std::uint64_t master_seed = 0;
  /// Multiplies every check tolerance and the library tolerances.
  double tolerance_scale = 1.0;
};

struct SuiteFailure {
  std::size_t trial;
  std::size_t dim;
  std::optional<std::size_t> k;
  std::string check;
  std::vector<double> values;
  double margin;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::size_t> dims;
  std::size_t env_dim = 0;
  double tolerance = 0.0;
  double worst_margin = 0.0;
  std::size_t checks = 0;
  std::vector<SuiteFailure> failures;
  double wall_time = 0.0;

  bool passed() const { return failures.empty(); }
};

/// lemma3, fkinq, thm4, relfid0, relt0, fkled, dkinq, fidtr, mult, submult,
/// thm5, geqpart, comm, concavity, fkfkn, invariance
const std::vector<std::string>& suite_names();

bool is_suite(const std::string& name);

/// Throws BadParameter for an unknown suite.
SuiteReport run_suite(const SuiteConfig& config);

/// wall_time is only emitted when include_timing is set, keeping reports
/// byte-identical across runs by default.
Json report_to_json(const SuiteReport& report, bool include_timing = false);

}  // namespace pfid
