#pragma once

#include <string>
#include <vector>

#include "nusf/scenario.hpp"

namespace nusf::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double metric = 0.0;  // the measured quantity driving pass/fail
  std::string detail;
};

struct Options {
  bool quick = false;              // skip the oracle sweep
  bool inject_m_sign_error = false;  // test hook: flips the M rotation sign
};

/// Runs the validation suite (t=0 identities, incompatibility constant,
/// analytic-vs-oracle sweep, conservation sweep, EUR/discord/thermalisation
/// behaviour on the reference scenario, spectral closed forms, determinism).
std::vector<CheckResult> run_suite(const Options& opts = {});

/// One machine-parseable line per check: "PASS|FAIL|SKIP name metric detail".
void print_results(const std::vector<CheckResult>& results, std::ostream& os);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace nusf::validate
