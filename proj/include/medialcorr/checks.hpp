#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace medialcorr {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // empty on pass, diagnostic on failure
};

/// Golden checks: closed-form values of the worked examples and the
/// degenerate families, verified against the orthant engine.
std::vector<CheckResult> run_example_checks();

/// Property checks: representation equivalence, permutation invariance,
/// duality, reflection sums, transition identity, dimension-3 collapse,
/// range bounds, estimator route equivalence and invariances.
std::vector<CheckResult> run_property_checks(std::uint64_t seed);

/// Seeded Monte Carlo checks: sampler margins, orthant consistency, and
/// empirical-vs-exact agreement at n = 200000.
std::vector<CheckResult> run_montecarlo_checks(std::uint64_t seed, int threads = 0);

/// Golden check against the bundled wine dataset (returns empty when the
/// file is absent).
std::vector<CheckResult> run_wine_checks(const std::string& csv_path);

}  // namespace medialcorr
