#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sybil/core.hpp"

namespace sybil {

/// T[a][b] = number of voters ranking a strictly above b.
class PairwiseTally {
 public:
  PairwiseTally(std::size_t alternatives, AlternativeIndex reality);

  void add(const Ranking& ranking);
  PairwiseTally& operator+=(const PairwiseTally& other);

  Count at(AlternativeIndex a, AlternativeIndex b) const { return counts_[a * alternatives_ + b]; }
  Count voters() const { return voters_; }
  std::size_t alternatives() const { return alternatives_; }
  AlternativeIndex reality() const { return reality_; }

  friend bool operator==(const PairwiseTally&, const PairwiseTally&) = default;

 private:
  std::size_t alternatives_;
  AlternativeIndex reality_;
  Count voters_ = 0;
  std::vector<Count> counts_;
};

struct ViableSet {
  std::vector<AlternativeIndex> members;  // sorted; always contains reality
  Delta delta;
  std::vector<Contest> trace;

  bool contains(AlternativeIndex a) const;
};

enum class Variant { Conservative, Permissive };

/// Which alternatives a delta-supermajority Condorcet winner has to beat.
/// AllAlternatives is the default for the delta rules: a winner must clear
/// the margin against every alternative, viable or not. RealityViable limits
/// contests to the viable set and is not sybil safe; it exists so that
/// behaviour can be reproduced and audited.
enum class ContestScope { AllAlternatives, RealityViable };

PairwiseTally pairwise_tally(const OrdinalProfile& profile);

/// {r} together with every a whose share of voters ranking it above r is at
/// least 1/2 + delta (weak inequality).
ViableSet viable_set(const PairwiseTally& tally, const Delta& delta);
ViableSet viable_set(const OrdinalProfile& profile, const Delta& delta);

/// The member of `subset` beating every other member by a strict
/// delta-supermajority, if any. Contests examined are appended to `trace`.
std::optional<AlternativeIndex> delta_condorcet_winner(const PairwiseTally& tally,
                                                       std::span<const AlternativeIndex> subset,
                                                       const Delta& delta,
                                                       std::vector<Contest>* trace = nullptr);

/// Reality-aware Condorcet base rule: Condorcet winner of the majority
/// viable set A_r, else r (conservative) or all of A_r (permissive).
DecisionOutcome base_condorcet_rule(const PairwiseTally& tally, Variant variant);
DecisionOutcome base_condorcet_rule(const OrdinalProfile& profile, Variant variant);

/// Elects the delta-supermajority Condorcet winner if one exists; otherwise
/// r (conservative) or the whole delta-viable set (permissive).
DecisionOutcome supermajority_condorcet_rule(const PairwiseTally& tally, const Delta& delta, Variant variant,
                                             ContestScope scope = ContestScope::AllAlternatives);
DecisionOutcome supermajority_condorcet_rule(const OrdinalProfile& profile, const Delta& delta, Variant variant,
                                             ContestScope scope = ContestScope::AllAlternatives);

/// Sequential agenda over the delta-viable set, starting from r, followed by
/// a final check of the agenda winner against every alternative in scope it
/// has not already beaten by a delta-supermajority.
///
/// `order` must be a permutation of all alternatives; non-viable entries are
/// skipped and r always goes first. A challenger replaces the incumbent only
/// on a strict delta-supermajority.
DecisionOutcome amendment_agenda(const PairwiseTally& tally, const Delta& delta, Variant variant,
                                 std::span<const AlternativeIndex> order,
                                 ContestScope scope = ContestScope::AllAlternatives);
DecisionOutcome amendment_agenda(const OrdinalProfile& profile, const Delta& delta, Variant variant,
                                 std::span<const AlternativeIndex> order,
                                 ContestScope scope = ContestScope::AllAlternatives);

/// Input order with reality moved to the front.
std::vector<AlternativeIndex> default_agenda_order(const AlternativeSet& alternatives);

}  // namespace sybil
