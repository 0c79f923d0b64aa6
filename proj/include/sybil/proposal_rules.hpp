#pragma once

#include "sybil/core.hpp"

namespace sybil {

/// Genuine supermajority margin needed to move the status quo when every
/// sybil defends it.
struct ConservatismPoint {
  SigmaBound sigma;
  Delta delta;
  Rational rho;
  /// rho >= 1/2: not even a unanimous genuine electorate can win.
  bool unachievable = false;

  Rational genuine_share_required() const { return Rational(1, 2) + rho; }
};

/// Elects the proposal iff it has more than a 1/2 + delta share; reality
/// wins ties and every sub-threshold count.
DecisionOutcome supermajority_rule(const BinaryProfile& profile, const Delta& delta);

/// supermajority_rule with delta = 0.
DecisionOutcome majority_base_rule(const BinaryProfile& profile);

/// sigma / 2: the smallest margin that keeps the rule safe against a
/// penetration of sigma.
Delta min_safe_delta(const SigmaBound& sigma);

/// rho = (1/2 + delta) / (1 - sigma) - 1/2. Throws when sigma = 1.
ConservatismPoint conservatism(const SigmaBound& sigma, const Delta& delta);

}  // namespace sybil
