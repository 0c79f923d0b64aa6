#include "sybil/ordinal_rules.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sybil {
namespace {

Contest make_contest(ContestKind kind, const PairwiseTally& tally, AlternativeIndex challenger,
                     AlternativeIndex incumbent, const Delta& delta) {
  const Count support = tally.at(challenger, incumbent);
  const Count total = tally.voters();
  return Contest{kind, challenger, incumbent, support, total, delta,
                 strict_supermajority(support, total, delta), exactly_at_threshold(support, total, delta)};
}

std::vector<AlternativeIndex> all_alternatives(const PairwiseTally& tally) {
  std::vector<AlternativeIndex> out(tally.alternatives());
  std::iota(out.begin(), out.end(), AlternativeIndex{0});
  return out;
}

void require_voters(const PairwiseTally& tally) {
  if (tally.voters() == 0) {
    throw std::invalid_argument("empty profile");
  }
}

}  // namespace

PairwiseTally::PairwiseTally(std::size_t alternatives, AlternativeIndex reality)
    : alternatives_(alternatives), reality_(reality), counts_(alternatives * alternatives, 0) {
  if (reality >= alternatives) {
    throw std::invalid_argument("reality index out of range");
  }
}

void PairwiseTally::add(const Ranking& ranking) {
  validate_ranking(ranking, alternatives_);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    for (std::size_t j = i + 1; j < ranking.size(); ++j) {
      ++counts_[ranking[i] * alternatives_ + ranking[j]];
    }
  }
  ++voters_;
}

PairwiseTally& PairwiseTally::operator+=(const PairwiseTally& other) {
  if (other.alternatives_ != alternatives_ || other.reality_ != reality_) {
    throw std::invalid_argument("tallies over different alternative sets");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  voters_ += other.voters_;
  return *this;
}

bool ViableSet::contains(AlternativeIndex a) const {
  return std::binary_search(members.begin(), members.end(), a);
}

PairwiseTally pairwise_tally(const OrdinalProfile& profile) {
  PairwiseTally tally(profile.alternatives().size(), profile.alternatives().reality());
  for (const auto& ranking : profile.rankings()) {
    tally.add(ranking);
  }
  return tally;
}

ViableSet viable_set(const PairwiseTally& tally, const Delta& delta) {
  require_voters(tally);
  ViableSet out;
  out.delta = delta;
  const AlternativeIndex r = tally.reality();
  for (AlternativeIndex a = 0; a < tally.alternatives(); ++a) {
    if (a == r) {
      out.members.push_back(a);
      continue;
    }
    Contest contest = make_contest(ContestKind::Viability, tally, a, r, delta);
    contest.passed = reaches_fraction(contest.support, contest.total, delta);
    if (contest.passed) {
      out.members.push_back(a);
    }
    out.trace.push_back(contest);
  }
  return out;
}

ViableSet viable_set(const OrdinalProfile& profile, const Delta& delta) {
  return viable_set(pairwise_tally(profile), delta);
}

std::optional<AlternativeIndex> delta_condorcet_winner(const PairwiseTally& tally,
                                                       std::span<const AlternativeIndex> subset,
                                                       const Delta& delta, std::vector<Contest>* trace) {
  if (subset.empty()) {
    throw std::invalid_argument("empty alternative subset");
  }
  for (AlternativeIndex a : subset) {
    bool beats_all = true;
    for (AlternativeIndex b : subset) {
      if (a == b) {
        continue;
      }
      Contest contest = make_contest(ContestKind::Condorcet, tally, a, b, delta);
      if (trace != nullptr) {
        trace->push_back(contest);
      }
      if (!contest.passed) {
        beats_all = false;
        break;
      }
    }
    if (beats_all) {
      return a;
    }
  }
  return std::nullopt;
}

DecisionOutcome base_condorcet_rule(const PairwiseTally& tally, Variant variant) {
  return supermajority_condorcet_rule(tally, Delta(Rational(0)), variant, ContestScope::RealityViable);
}

DecisionOutcome base_condorcet_rule(const OrdinalProfile& profile, Variant variant) {
  return base_condorcet_rule(pairwise_tally(profile), variant);
}

DecisionOutcome supermajority_condorcet_rule(const PairwiseTally& tally, const Delta& delta, Variant variant,
                                             ContestScope scope) {
  ViableSet viable = viable_set(tally, delta);
  DecisionOutcome out;
  out.trace = std::move(viable.trace);
  const auto contested = scope == ContestScope::AllAlternatives ? all_alternatives(tally) : viable.members;
  if (auto winner = delta_condorcet_winner(tally, contested, delta, &out.trace)) {
    out.winners = {*winner};
  } else if (variant == Variant::Conservative) {
    out.winners = {tally.reality()};
  } else {
    out.winners = viable.members;
  }
  return out;
}

DecisionOutcome supermajority_condorcet_rule(const OrdinalProfile& profile, const Delta& delta, Variant variant,
                                             ContestScope scope) {
  return supermajority_condorcet_rule(pairwise_tally(profile), delta, variant, scope);
}

DecisionOutcome amendment_agenda(const PairwiseTally& tally, const Delta& delta, Variant variant,
                                 std::span<const AlternativeIndex> order, ContestScope scope) {
  std::vector<bool> listed(tally.alternatives(), false);
  for (AlternativeIndex a : order) {
    if (a >= listed.size() || listed[a]) {
      throw std::invalid_argument("agenda order must list every alternative exactly once");
    }
    listed[a] = true;
  }
  if (order.size() != tally.alternatives()) {
    throw std::invalid_argument("agenda order must list every alternative exactly once");
  }
  ViableSet viable = viable_set(tally, delta);
  DecisionOutcome out;
  out.trace = std::move(viable.trace);
  const AlternativeIndex r = tally.reality();
  if (viable.members.size() == 1) {
    out.winners = {r};
    return out;
  }

  AlternativeIndex winner = r;
  // beaten[x]: the current winner has already beaten x by a delta-supermajority.
  std::vector<bool> beaten(tally.alternatives(), false);
  for (AlternativeIndex challenger : order) {
    if (challenger == r || !viable.contains(challenger)) {
      continue;
    }
    Contest contest = make_contest(ContestKind::Agenda, tally, challenger, winner, delta);
    out.trace.push_back(contest);
    if (contest.passed) {
      std::fill(beaten.begin(), beaten.end(), false);
      beaten[winner] = true;
      winner = challenger;
    } else if (strict_supermajority(tally.at(winner, challenger), tally.voters(), delta)) {
      beaten[challenger] = true;
    }
  }

  const auto contested = scope == ContestScope::AllAlternatives ? all_alternatives(tally) : viable.members;
  bool survives = true;
  for (AlternativeIndex other : contested) {
    if (other == winner || beaten[other]) {
      continue;
    }
    Contest contest = make_contest(ContestKind::FinalCheck, tally, winner, other, delta);
    out.trace.push_back(contest);
    survives = survives && contest.passed;
  }

  if (survives) {
    out.winners = {winner};
  } else if (variant == Variant::Conservative) {
    out.winners = {r};
  } else {
    out.winners = viable.members;
  }
  return out;
}

DecisionOutcome amendment_agenda(const OrdinalProfile& profile, const Delta& delta, Variant variant,
                                 std::span<const AlternativeIndex> order, ContestScope scope) {
  return amendment_agenda(pairwise_tally(profile), delta, variant, order, scope);
}

std::vector<AlternativeIndex> default_agenda_order(const AlternativeSet& alternatives) {
  std::vector<AlternativeIndex> order{alternatives.reality()};
  for (AlternativeIndex a = 0; a < alternatives.size(); ++a) {
    if (a != alternatives.reality()) {
      order.push_back(a);
    }
  }
  return order;
}

}  // namespace sybil
