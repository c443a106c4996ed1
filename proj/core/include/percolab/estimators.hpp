#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"
#include "percolab/stats.hpp"

namespace percolab {

struct threshold_estimate {
  double value = 0.0;
  double ci_low = 0.0, ci_high = 0.0;
  std::string method;  // bisection | spectral | degree-lower | connectivity-upper
  double delta = 0.0;  // target density (bisection)
  int64_t reps = 0;    // replicas per evaluation at the final bisection step
  uint64_t seed = 0;
  double level = 0.5;       // the probability level the bisection solves for
  bool budget_capped = false;  // an evaluation hit the adaptive-reps budget
};

// Solves P_p(||K_1|| >= delta) = level (default 1/2) by bisection on p.
// Every evaluation reuses the same replica streams (seed, 0..reps-1), so the
// estimated curve is exactly non-decreasing in p; when an evaluation's Wilson
// interval straddles the level, reps double (up to 16x) before branching.
// The returned interval combines bisection width with any budget-capped
// (statistically unresolved) bracket. Errors: degenerate-threshold when
// delta <= 1/|V| (the event holds at p = 0), invalid-parameter when delta > 1.
threshold_estimate empirical_threshold(const graph& g, double delta, int64_t reps, double tol,
                                       uint64_t seed, int threads = 1, double level = 0.5);

// 1 / spectral radius; exact (zero-width interval) on regular graphs.
threshold_estimate spectral_threshold(const graph& g);

// (1/(d-1), min(1, 2 ln|V| / d)). Errors: invalid-parameter when d < 2.
std::pair<double, double> degree_bounds(const graph& g);

struct sweep_row {
  double p = 0.0;
  double prob_k1_geq_alpha = 0.0;
  ci_t prob_k1_ci;
  double mean_k1 = 0.0;
  ci_t mean_k1_ci;
  double mean_k2 = 0.0;
  ci_t mean_k2_ci;
  double prob_k2_geq_beta = 0.0;
  ci_t prob_k2_ci;
};

struct sweep_result {
  double alpha = 0.0, beta = 0.0;
  int64_t reps = 0;
  uint64_t seed = 0;
  std::vector<sweep_row> grid;  // sorted by p
};

sweep_result sweep(const graph& g, std::vector<double> p_grid, double alpha, double beta,
                   int64_t reps, uint64_t seed, int threads = 1);

struct mean_field_report {
  double p = 0.0, epsilon = 0.0;
  double lhs = 0.0;          // mean ||K_1|| at (1+eps)p
  double lhs_stderr = 0.0;
  double rhs = 0.0;          // eps / (1+eps)
  double slack = 0.0;        // finite-size allowance
  double baseline_mean_k1 = 0.0;  // mean ||K_1|| at p itself, for context
  bool pass = false;         // lhs >= rhs - 4*stderr - slack
  int64_t reps = 0;
  uint64_t seed = 0;
};

mean_field_report mean_field_check(const graph& g, double p, double epsilon, int64_t reps,
                                   uint64_t seed, double slack = 0.05, int threads = 1);

struct uniqueness_report {
  double p = 0.0, beta = 0.0;
  double freq = 0.0;  // frequency of ||K_2|| >= beta
  ci_t ci;
  int64_t reps = 0;
  uint64_t seed = 0;
};

uniqueness_report uniqueness_profile(const graph& g, double p, double beta, int64_t reps,
                                     uint64_t seed, int threads = 1);

// Largest solution theta in [0,1) of theta = 1 - exp(-c theta); 0 for c <= 1.
// Fixed-point iteration from theta_0 = 1 (monotone decreasing onto the root);
// stops only when |theta - (1 - exp(-c theta))| <= tol holds for the result.
double er_fixed_point(double c, double tol = 1e-10);

}  // namespace percolab
