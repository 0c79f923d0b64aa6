#include "sybil/estimation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace sybil {
namespace {

constexpr double kTolerance = 1e-9;
constexpr std::int64_t kGrid = 1'000'000'000;

}  // namespace

void InspectionSample::validate() const {
  if (sample_size < 1) {
    throw std::invalid_argument("sample size must be at least 1");
  }
  if (sybils_observed < 0 || sybils_observed > sample_size) {
    throw std::invalid_argument("sybils observed must lie in [0, sample size]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1)");
  }
}

double binomial_lower_tail(std::int64_t trials, std::int64_t successes, double z) {
  if (successes >= trials || z <= 0.0) {
    return 1.0;
  }
  if (successes < 0 || z >= 1.0) {
    return 0.0;
  }
  const double log_z = std::log(z);
  const double log_not_z = std::log1p(-z);
  const double log_n_fact = std::lgamma(static_cast<double>(trials) + 1.0);
  double sum = 0.0;
  for (std::int64_t i = 0; i <= successes; ++i) {
    const double log_term = log_n_fact - std::lgamma(static_cast<double>(i) + 1.0) -
                            std::lgamma(static_cast<double>(trials - i) + 1.0) +
                            static_cast<double>(i) * log_z + static_cast<double>(trials - i) * log_not_z;
    sum += std::exp(log_term);
  }
  return std::min(sum, 1.0);
}

SigmaBound sigma_upper_bound(const InspectionSample& sample) {
  sample.validate();
  const auto k = sample.sample_size;
  const auto s = sample.sybils_observed;
  if (s == k) {
    return SigmaBound(Rational(1));
  }
  // The tail is decreasing in z; keep tail(hi) <= p < tail(lo).
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_lower_tail(k, s, mid) <= sample.confidence) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  auto grid_steps = static_cast<std::int64_t>(std::ceil(hi * static_cast<double>(kGrid)));
  grid_steps = std::min(grid_steps, kGrid);
  return SigmaBound(Rational(grid_steps, kGrid));
}

SigmaBound sigma_point_plus_margin(const InspectionSample& sample, const Rational& epsilon) {
  if (epsilon < 0) {
    throw std::invalid_argument("epsilon must be non-negative");
  }
  if (sample.sample_size < 1 || sample.sybils_observed < 0 || sample.sybils_observed > sample.sample_size) {
    throw std::invalid_argument("invalid inspection sample");
  }
  const Rational estimate = Rational(sample.sybils_observed, sample.sample_size) + epsilon;
  return SigmaBound(estimate > 1 ? Rational(1) : estimate);
}

CoverageResult simulate_coverage(double true_sigma, std::int64_t sample_size, double confidence,
                                 std::int64_t trials, std::uint64_t seed) {
  if (!(true_sigma >= 0.0 && true_sigma <= 1.0)) {
    throw std::invalid_argument("true sigma must lie in [0, 1]");
  }
  // The bound depends only on s, so compute it once per possible count.
  std::vector<double> bound(static_cast<std::size_t>(sample_size) + 1);
  for (std::int64_t s = 0; s <= sample_size; ++s) {
    bound[static_cast<std::size_t>(s)] = to_double(sigma_upper_bound({sample_size, s, confidence}).value());
  }
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> draw(sample_size, true_sigma);
  CoverageResult out;
  out.trials = trials;
  for (std::int64_t t = 0; t < trials; ++t) {
    if (true_sigma > bound[static_cast<std::size_t>(draw(rng))]) {
      ++out.misses;
    }
  }
  return out;
}

}  // namespace sybil
