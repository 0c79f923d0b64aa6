#pragma once

#include <cstdint>

#include "sybil/core.hpp"

namespace sybil {

/// k voters inspected uniformly at random (with replacement), s of them
/// found to be sybils, target tail probability p.
struct InspectionSample {
  std::int64_t sample_size = 0;
  std::int64_t sybils_observed = 0;
  double confidence = 0.05;

  void validate() const;
};

/// Pr[Bin(trials, z) <= successes].
double binomial_lower_tail(std::int64_t trials, std::int64_t successes, double z);

/// Smallest z on a 1e-9 grid with Pr[Bin(k, z) <= s] <= p, found by
/// bisection and rounded up so the tail guarantee is never weakened.
/// Returns 1 when s = k.
SigmaBound sigma_upper_bound(const InspectionSample& sample);

/// min(s/k + epsilon, 1).
SigmaBound sigma_point_plus_margin(const InspectionSample& sample, const Rational& epsilon);

struct CoverageResult {
  std::int64_t trials = 0;
  std::int64_t misses = 0;  // runs where the true sigma exceeded the bound
  double miss_rate() const { return trials == 0 ? 0.0 : static_cast<double>(misses) / static_cast<double>(trials); }
};

/// Draws `trials` binomial samples of size k at the true penetration and
/// counts how often sigma_upper_bound falls below it.
CoverageResult simulate_coverage(double true_sigma, std::int64_t sample_size, double confidence,
                                 std::int64_t trials, std::uint64_t seed);

}  // namespace sybil
