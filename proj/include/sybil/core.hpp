#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sybil/decimal.hpp"
#include "sybil/rational.hpp"

namespace sybil {

using Count = std::int64_t;

struct AgentId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// V = H ⊎ S. Ballots in every profile are indexed by AgentId::value, so an
/// electorate of n agents always uses the ids 0..n-1. Only the audit harness
/// reads the genuine/sybil split; rules never see it.
class Electorate {
 public:
  Electorate(std::vector<AgentId> genuine, std::vector<AgentId> sybils);

  /// Agents 0..n-1 with the given ids marked as sybils.
  static Electorate with_sybils(std::size_t n, std::span<const std::uint32_t> sybil_ids);

  const std::vector<AgentId>& genuine() const { return genuine_; }
  const std::vector<AgentId>& sybils() const { return sybils_; }
  std::size_t size() const { return genuine_.size() + sybils_.size(); }
  bool is_sybil(AgentId id) const;

 private:
  std::vector<AgentId> genuine_;
  std::vector<AgentId> sybils_;
};

/// Sybil penetration bound, exact rational in [0, 1].
class SigmaBound {
 public:
  SigmaBound() = default;
  explicit SigmaBound(Rational value);
  const Rational& value() const { return value_; }
  friend bool operator==(const SigmaBound& a, const SigmaBound& b) { return a.value_ == b.value_; }
  friend bool operator<(const SigmaBound& a, const SigmaBound& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

/// Supermajority margin, exact rational in [0, 1/2].
class Delta {
 public:
  Delta() = default;
  explicit Delta(Rational value);
  const Rational& value() const { return value_; }
  friend bool operator==(const Delta& a, const Delta& b) { return a.value_ == b.value_; }
  friend bool operator<(const Delta& a, const Delta& b) { return a.value_ < b.value_; }

 private:
  Rational value_{0};
};

using AlternativeIndex = std::size_t;

/// Alternatives in a fixed order with one distinguished reality.
class AlternativeSet {
 public:
  AlternativeSet(std::vector<std::string> ids, std::string_view reality);

  std::size_t size() const { return ids_.size(); }
  AlternativeIndex reality() const { return reality_; }
  const std::string& name(AlternativeIndex a) const { return ids_.at(a); }
  const std::vector<std::string>& names() const { return ids_; }
  AlternativeIndex index_of(std::string_view id) const;

  friend bool operator==(const AlternativeSet&, const AlternativeSet&) = default;

 private:
  std::vector<std::string> ids_;
  AlternativeIndex reality_ = 0;
};

enum class Ballot : std::uint8_t { Reality = 0, Proposal = 1 };

/// Alternative indices used in binary outcomes; matches Ballot's values.
inline constexpr AlternativeIndex kRealityIndex = 0;
inline constexpr AlternativeIndex kProposalIndex = 1;

struct BinaryProfile {
  std::vector<Ballot> votes;

  Count proposal_votes() const;
  std::size_t size() const { return votes.size(); }
  friend bool operator==(const BinaryProfile&, const BinaryProfile&) = default;
};

/// Best first; always a permutation of the alternative indices.
using Ranking = std::vector<AlternativeIndex>;

class OrdinalProfile {
 public:
  OrdinalProfile(AlternativeSet alternatives, std::vector<Ranking> rankings);

  const AlternativeSet& alternatives() const { return alternatives_; }
  const std::vector<Ranking>& rankings() const { return rankings_; }
  std::size_t size() const { return rankings_.size(); }

  friend bool operator==(const OrdinalProfile&, const OrdinalProfile&) = default;

 private:
  AlternativeSet alternatives_;
  std::vector<Ranking> rankings_;
};

/// Throws "invalid ballot" unless the ranking is a permutation of 0..m-1.
void validate_ranking(const Ranking& ranking, std::size_t alternatives);

struct ParameterProfile {
  Decimal current;
  std::vector<Decimal> ideal_points;

  std::size_t size() const { return ideal_points.size(); }
  friend bool operator==(const ParameterProfile&, const ParameterProfile&) = default;
};

enum class ContestKind : std::uint8_t {
  Proposal,    // single proposal against reality
  Viability,   // alternative against reality, weak threshold
  Condorcet,   // pairwise check while searching for a Condorcet winner
  Agenda,      // challenger against the current agenda winner
  FinalCheck,  // agenda winner against alternatives it has not yet beaten
};

std::string_view to_string(ContestKind kind);

/// One pairwise contest: `support` of `total` voters rank challenger above
/// incumbent, compared against 1/2 + delta.
struct Contest {
  ContestKind kind = ContestKind::Proposal;
  AlternativeIndex challenger = 0;
  AlternativeIndex incumbent = 0;
  Count support = 0;
  Count total = 0;
  Delta delta;
  bool passed = false;
  /// support/total == 1/2 + delta exactly: the weak and strict readings of
  /// the threshold disagree here.
  bool at_threshold = false;

  friend bool operator==(const Contest&, const Contest&) = default;
};

struct DecisionOutcome {
  std::vector<AlternativeIndex> winners;  // sorted, nonempty
  std::vector<Contest> trace;

  bool elects_only(AlternativeIndex a) const { return winners.size() == 1 && winners.front() == a; }
  bool elects(AlternativeIndex a) const;
  friend bool operator==(const DecisionOutcome&, const DecisionOutcome&) = default;
};

/// count_for / total > 1/2 + delta, by exact integer cross-multiplication.
bool strict_supermajority(Count count_for, Count total, const Delta& delta);

/// count_for / total >= 1/2 + delta.
bool reaches_fraction(Count count_for, Count total, const Delta& delta);

/// count_for / total == 1/2 + delta.
bool exactly_at_threshold(Count count_for, Count total, const Delta& delta);

SigmaBound sybil_fraction(const Electorate& electorate);

/// Ballots of genuine agents, in agent-id order.
BinaryProfile restrict_to_genuine(const BinaryProfile& profile, const Electorate& electorate);
OrdinalProfile restrict_to_genuine(const OrdinalProfile& profile, const Electorate& electorate);
ParameterProfile restrict_to_genuine(const ParameterProfile& profile, const Electorate& electorate);

}  // namespace sybil
