#pragma once

#include <string>
#include <vector>

#include "percolab/io.hpp"

namespace percolab {

// One pass/fail check inside a suite, tagged with the acceptance-criterion
// number it realizes (9 = cross-cutting property battery).
struct suite_check {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double elapsed_seconds = 0.0;
};

struct suite_result {
  std::string name;
  bool pass = false;  // conjunction of all checks
  double elapsed_seconds = 0.0;
  std::vector<suite_check> checks;
};

// The four named batteries behind the acceptance criteria, with pinned seeds:
//   coupling   — exact lemma bound, pathwise domination, exact regressions
//   thresholds — ER giant density, mean-field bound, threshold sharpness
//   bounds     — degree/spectral threshold location ordering
//   molecular  — uniqueness contrast between plain and molecular families
// Errors: unknown-suite.
suite_result run_suite(const std::string& name, int threads = 1);
const std::vector<std::string>& suite_names();

// Condensed cross-module property battery (determinism, shared-uniform
// monotonicity, cluster conservation, exploration golden traces, law of total
// probability, tau_fail < tau_moat under a biting q, pivotal impossibility).
// The full-resolution version lives in the unit tests; this one gives the
// acceptance runner a single in-process verdict.
suite_result run_property_battery(int threads = 1);

json suite_to_json(const suite_result& r);

}  // namespace percolab
