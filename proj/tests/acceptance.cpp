// Acceptance gate: runs every battery once, folds the checks into the nine
// numbered criteria, and prints one verdict line per criterion. A criterion
// passes when all of its checks pass and, where a runtime budget applies,
// the summed wall time of those checks stays inside it. Exit status is the
// number of failed criteria; the final footer line is emitted regardless so
// harnesses can distinguish "gate ran and reported" from "gate crashed".

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "percolab/suites.hpp"

namespace {

struct criterion_spec {
  int id;
  const char* label;
  double time_limit_seconds;  // 0 = no budget
};

const criterion_spec kCriteria[] = {
    {1, "exact failure-probability bound across the applicable scan", 300.0},
    {2, "pathwise domination over seeded coupled runs", 600.0},
    {3, "exact rational regression values", 0.0},
    {4, "giant-component density vs fixed-point oracle", 120.0},
    {5, "mean-field lower bound with slack", 0.0},
    {6, "threshold location within degree and spectral bounds", 1200.0},
    {7, "threshold sharpness window", 0.0},
    {8, "molecular uniqueness contrast", 0.0},
    {9, "property battery", 0.0},
};

struct bucket {
  std::vector<const percolab::suite_check*> checks;
  int n_pass = 0;
  double elapsed = 0.0;
};

}  // namespace

int main() {
  std::printf("percolab acceptance gate\n");
  std::printf("========================\n");

  std::vector<percolab::suite_result> results;
  for (const char* name : {"coupling", "thresholds", "bounds", "molecular"}) {
    std::printf("running suite %s ...\n", name);
    std::fflush(stdout);
    results.push_back(percolab::run_suite(name));
  }
  std::printf("running property battery ...\n");
  std::fflush(stdout);
  results.push_back(percolab::run_property_battery());

  std::map<int, bucket> buckets;
  for (const percolab::suite_result& r : results)
    for (const percolab::suite_check& c : r.checks) {
      bucket& b = buckets[c.criterion];
      b.checks.push_back(&c);
      if (c.pass) ++b.n_pass;
      b.elapsed += c.elapsed_seconds;
    }

  std::printf("\n");
  int failed = 0;
  for (const criterion_spec& spec : kCriteria) {
    const bucket& b = buckets[spec.id];  // default-constructed if empty
    bool checks_ok = !b.checks.empty() && b.n_pass == static_cast<int>(b.checks.size());
    bool time_ok = spec.time_limit_seconds <= 0.0 || b.elapsed <= spec.time_limit_seconds;
    bool pass = checks_ok && time_ok;
    if (!pass) ++failed;

    std::string budget;
    if (spec.time_limit_seconds > 0.0)
      budget = ", budget " + std::to_string(static_cast<int>(spec.time_limit_seconds)) + " s";
    std::printf("[%s] criterion %d: %s (%d/%zu checks, %.1f s%s)\n", pass ? "PASS" : "FAIL",
                spec.id, spec.label, b.n_pass, b.checks.size(), b.elapsed, budget.c_str());
    if (!time_ok)
      std::printf("       runtime budget exceeded: %.1f s > %.0f s\n", b.elapsed,
                  spec.time_limit_seconds);
    if (b.checks.empty()) std::printf("       no checks were attributed to this criterion\n");
    for (const percolab::suite_check* c : b.checks)
      if (!c->pass) std::printf("       failed: %s — %s\n", c->name.c_str(), c->detail.c_str());
  }

  std::printf("\nacceptance gate: ran 9 criteria, %d failed\n", failed);
  return failed;
}
