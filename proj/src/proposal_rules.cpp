#include "sybil/proposal_rules.hpp"

#include <stdexcept>

namespace sybil {

DecisionOutcome supermajority_rule(const BinaryProfile& profile, const Delta& delta) {
  if (profile.votes.empty()) {
    throw std::invalid_argument("empty profile");
  }
  const Count total = static_cast<Count>(profile.size());
  const Count support = profile.proposal_votes();
  Contest contest{ContestKind::Proposal, kProposalIndex, kRealityIndex, support, total, delta,
                  strict_supermajority(support, total, delta), exactly_at_threshold(support, total, delta)};
  DecisionOutcome out;
  out.winners = {contest.passed ? kProposalIndex : kRealityIndex};
  out.trace.push_back(contest);
  return out;
}

DecisionOutcome majority_base_rule(const BinaryProfile& profile) {
  return supermajority_rule(profile, Delta(Rational(0)));
}

Delta min_safe_delta(const SigmaBound& sigma) {
  return Delta(sigma.value() / 2);
}

ConservatismPoint conservatism(const SigmaBound& sigma, const Delta& delta) {
  if (sigma.value() == Rational(1)) {
    throw std::domain_error("division by zero: no genuine agents");
  }
  const Rational half(1, 2);
  const Rational rho = (half + delta.value()) / (Rational(1) - sigma.value()) - half;
  return ConservatismPoint{sigma, delta, rho, rho >= half};
}

}  // namespace sybil
