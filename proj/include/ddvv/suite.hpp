// Seeded randomized check suites over the identity, proved-inequality and
// curvature-bridge contracts.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ddvv/curvature.hpp"
#include "ddvv/matcore.hpp"

namespace ddvv {

struct CheckResult {
  std::string name;
  bool passed = true;
  /// Residual checks: largest observed residual (pass iff <= bound).
  /// Inequality checks: smallest observed gap/scale (pass iff no violations).
  double worst = 0.0;
  double bound = 0.0;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Reported only; never fails the suite.
  bool informational = false;
};

struct SuiteOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

std::vector<CheckResult> identities_suite(const SuiteOptions& opt);
std::vector<CheckResult> proved_inequalities_suite(const SuiteOptions& opt);
std::vector<CheckResult> curvature_bridge_suite(const SuiteOptions& opt);

/// name ∈ {identities, proved-inequalities, curvature-bridge, all}.
std::vector<CheckResult> run_suite(std::string_view name, const SuiteOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

/// Random symmetric tuple drawn from a mixture: plain Gaussian, per-matrix
/// log-normal scales, traceless, and a perturbed copy of the 2×2 equality
/// pair embedded at a random orientation.
MatTuple sample_stress_tuple(std::size_t n, std::size_t m, Rng& rng);

/// Random fundamental form with umbilical components and c ~ N(0,1).
FundForm sample_fund_form(std::size_t n, std::size_t m, Rng& rng);

}  // namespace ddvv
