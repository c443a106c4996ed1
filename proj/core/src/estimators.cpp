#include "percolab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "percolab/error.hpp"

namespace percolab {

// Threaded Monte Carlo frequency of pred(k1, k2, ko) over replicas 0..reps-1.
// Each replica writes its own slot, so the thread count cannot change the
// count (integer addition of fixed per-replica bits).
template <typename Pred>
static int64_t mc_hits(const graph& g, double p, int64_t reps, uint64_t seed, int threads,
                       Pred pred) {
  std::vector<uint8_t> hits(reps, 0);
  auto worker = [&](int64_t from, int64_t to) {
    for (int64_t r = from; r < to; ++r) {
      double k1, k2, ko;
      replica_densities(g, p, seed, static_cast<uint64_t>(r), k1, k2, ko);
      hits[r] = pred(k1, k2, ko) ? 1 : 0;
    }
  };
  if (threads <= 1 || reps < 2 * threads) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    int64_t chunk = (reps + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int64_t from = t * chunk, to = std::min<int64_t>(reps, from + chunk);
      if (from >= to) break;
      pool.emplace_back(worker, from, to);
    }
    for (auto& th : pool) th.join();
  }
  int64_t count = 0;
  for (int64_t r = 0; r < reps; ++r) count += hits[r];
  return count;
}

threshold_estimate empirical_threshold(const graph& g, double delta, int64_t reps, double tol,
                                       uint64_t seed, int threads, double level) {
  require(delta <= 1.0, errc::invalid_parameter, "delta must be <= 1");
  require(delta > 1.0 / g.num_vertices, errc::degenerate_threshold,
          "||K_1|| >= delta holds already at p = 0 when delta <= 1/|V|");
  require(reps >= 1, errc::invalid_parameter, "reps must be >= 1");
  require(tol > 0.0 && tol < 1.0, errc::invalid_parameter, "tol must lie in (0,1)");
  require(level > 0.0 && level < 1.0, errc::invalid_parameter, "level must lie in (0,1)");

  const int64_t max_reps = 16 * reps;
  double lo = 0.0, hi = 1.0;       // bisection bracket
  double lo_sure = 0.0, hi_sure = 1.0;  // bracket from statistically confident branches only
  bool capped = false;
  int64_t last_reps = reps;

  // Shared replica streams make p -> frequency exactly non-decreasing at any
  // fixed replica count; an inversion would mean a broken sampler.
  std::vector<std::pair<double, double>> seen;  // (p, freq) at base reps

  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    int64_t cur = reps;
    double freq = 0.0;
    ci_t ci;
    while (true) {
      int64_t hits =
          mc_hits(g, mid, cur, seed, threads,
                  [&](double k1, double, double) { return k1 >= delta; });
      freq = static_cast<double>(hits) / cur;
      ci = stats::wilson_ci(hits, cur);
      if (cur == reps) {
        for (auto& [sp, sf] : seen)
          require((sp < mid && sf <= freq) || (sp > mid && sf >= freq) || sp == mid,
                  errc::non_monotone_detected,
                  "estimated curve decreased in p; retry with more reps");
        seen.emplace_back(mid, freq);
      }
      bool straddles = ci.low < level && level < ci.high;
      if (!straddles || cur >= max_reps) break;
      cur *= 2;
    }
    last_reps = cur;
    bool confident = !(ci.low < level && level < ci.high);
    if (!confident) capped = true;
    if (freq >= level) {
      hi = mid;
      if (confident) hi_sure = mid;
    } else {
      lo = mid;
      if (confident) lo_sure = mid;
    }
  }

  threshold_estimate est;
  est.value = 0.5 * (lo + hi);
  est.ci_low = capped ? lo_sure : lo;
  est.ci_high = capped ? hi_sure : hi;
  est.method = "bisection";
  est.delta = delta;
  est.reps = last_reps;
  est.seed = seed;
  est.level = level;
  est.budget_capped = capped;
  return est;
}

threshold_estimate spectral_threshold(const graph& g) {
  threshold_estimate est;
  est.value = 1.0 / spectral_radius(g, 1e-9);
  est.ci_low = est.value;
  est.ci_high = est.value;
  est.method = "spectral";
  return est;
}

std::pair<double, double> degree_bounds(const graph& g) {
  require(g.degree >= 2, errc::invalid_parameter, "degree bounds need degree >= 2");
  double lower = 1.0 / (g.degree - 1);
  double upper = std::min(1.0, 2.0 * std::log(static_cast<double>(g.num_vertices)) / g.degree);
  return {lower, upper};
}

sweep_result sweep(const graph& g, std::vector<double> p_grid, double alpha, double beta,
                   int64_t reps, uint64_t seed, int threads) {
  require(!p_grid.empty(), errc::invalid_parameter, "p grid must be nonempty");
  require(reps >= 1, errc::invalid_parameter, "reps must be >= 1");
  std::sort(p_grid.begin(), p_grid.end());

  sweep_result res;
  res.alpha = alpha;
  res.beta = beta;
  res.reps = reps;
  res.seed = seed;
  res.grid.reserve(p_grid.size());
  for (double p : p_grid) {
    estimate_summary s = estimate(g, p, reps, seed, alpha, beta, threads);
    sweep_row row;
    row.p = p;
    row.prob_k1_geq_alpha = s.prob_k1_geq_alpha;
    row.prob_k1_ci = s.prob_k1_ci;
    row.mean_k1 = s.mean_k1;
    row.mean_k1_ci = s.mean_k1_ci;
    row.mean_k2 = s.mean_k2;
    row.mean_k2_ci = s.mean_k2_ci;
    row.prob_k2_geq_beta = s.prob_k2_geq_beta;
    row.prob_k2_ci = s.prob_k2_ci;
    res.grid.push_back(row);
  }
  return res;
}

mean_field_report mean_field_check(const graph& g, double p, double epsilon, int64_t reps,
                                   uint64_t seed, double slack, int threads) {
  require(epsilon > 0.0, errc::invalid_parameter, "epsilon must be > 0");
  require(reps >= 1, errc::invalid_parameter, "reps must be >= 1");
  require(slack >= 0.0, errc::invalid_parameter, "slack must be >= 0");

  estimate_summary boosted = estimate(g, (1.0 + epsilon) * p, reps, seed, 0.5, 0.25, threads);
  estimate_summary baseline = estimate(g, p, reps, seed, 0.5, 0.25, threads);

  mean_field_report rep;
  rep.p = p;
  rep.epsilon = epsilon;
  rep.lhs = boosted.mean_k1;
  rep.lhs_stderr = 0.5 * boosted.mean_k1_ci.width() / stats::z95;
  rep.rhs = epsilon / (1.0 + epsilon);
  rep.slack = slack;
  rep.baseline_mean_k1 = baseline.mean_k1;
  rep.pass = rep.lhs >= rep.rhs - 4.0 * rep.lhs_stderr - slack;
  rep.reps = reps;
  rep.seed = seed;
  return rep;
}

uniqueness_report uniqueness_profile(const graph& g, double p, double beta, int64_t reps,
                                     uint64_t seed, int threads) {
  require(reps >= 1, errc::invalid_parameter, "reps must be >= 1");
  int64_t hits = mc_hits(g, p, reps, seed, threads,
                         [&](double, double k2, double) { return k2 >= beta; });
  uniqueness_report rep;
  rep.p = p;
  rep.beta = beta;
  rep.freq = static_cast<double>(hits) / reps;
  rep.ci = stats::wilson_ci(hits, reps);
  rep.reps = reps;
  rep.seed = seed;
  return rep;
}

double er_fixed_point(double c, double tol) {
  require(c > 0.0, errc::invalid_parameter, "c must be > 0");
  require(tol > 0.0, errc::invalid_parameter, "tol must be > 0");
  if (c <= 1.0) return 0.0;
  // theta -> 1 - exp(-c theta) is increasing and lies below the identity
  // above the positive root, so iterates from 1 decrease monotonically onto
  // it; no damping is needed to stay in [0,1]. Stop on the residual itself.
  double theta = 1.0;
  for (int iter = 0; iter < 10000000; ++iter) {
    double next = -std::expm1(-c * theta);
    if (std::abs(next - theta) <= 0.5 * tol && std::abs(-std::expm1(-c * next) - next) <= tol)
      return next;
    theta = next;
  }
  return theta;
}

}  // namespace percolab
