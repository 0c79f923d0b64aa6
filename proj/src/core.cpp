#include "sybil/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace sybil {
namespace {

using Wide = unsigned __int128;

struct ThresholdSides {
  Wide lhs;  // 2q * count
  Wide rhs;  // total * (q + 2p)
};

// count/total vs 1/2 + p/q  <=>  2q*count vs total*(q + 2p).
ThresholdSides threshold_sides(Count count_for, Count total, const Delta& delta) {
  if (total <= 0) {
    throw std::invalid_argument("empty electorate");
  }
  if (count_for < 0 || count_for > total) {
    throw std::invalid_argument("vote count outside [0, total]");
  }
  const auto p = static_cast<Wide>(delta.value().numerator());
  const auto q = static_cast<Wide>(delta.value().denominator());
  return {2 * q * static_cast<Wide>(count_for), static_cast<Wide>(total) * (q + 2 * p)};
}

template <typename Profile, typename Ballots>
Ballots genuine_ballots(const Ballots& ballots, const Electorate& electorate) {
  if (ballots.size() != electorate.size()) {
    throw std::invalid_argument("profile and electorate sizes differ");
  }
  Ballots out;
  out.reserve(electorate.genuine().size());
  for (AgentId id : electorate.genuine()) {
    out.push_back(ballots[id.value]);
  }
  return out;
}

}  // namespace

Electorate::Electorate(std::vector<AgentId> genuine, std::vector<AgentId> sybils)
    : genuine_(std::move(genuine)), sybils_(std::move(sybils)) {
  std::sort(genuine_.begin(), genuine_.end());
  std::sort(sybils_.begin(), sybils_.end());
  if (size() == 0) {
    throw std::invalid_argument("empty electorate");
  }
  std::vector<AgentId> all;
  all.reserve(size());
  std::merge(genuine_.begin(), genuine_.end(), sybils_.begin(), sybils_.end(), std::back_inserter(all));
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].value != i) {
      throw std::invalid_argument("electorate ids must be exactly 0..n-1 with genuine and sybil sets disjoint");
    }
  }
}

Electorate Electorate::with_sybils(std::size_t n, std::span<const std::uint32_t> sybil_ids) {
  std::vector<bool> sybil(n, false);
  for (auto id : sybil_ids) {
    if (id >= n || sybil[id]) {
      throw std::invalid_argument("invalid sybil id");
    }
    sybil[id] = true;
  }
  std::vector<AgentId> genuine;
  std::vector<AgentId> sybils;
  for (std::uint32_t i = 0; i < n; ++i) {
    (sybil[i] ? sybils : genuine).push_back(AgentId{i});
  }
  return Electorate(std::move(genuine), std::move(sybils));
}

bool Electorate::is_sybil(AgentId id) const {
  return std::binary_search(sybils_.begin(), sybils_.end(), id);
}

SigmaBound::SigmaBound(Rational value) : value_(value) {
  if (value_ < 0 || value_ > 1) {
    throw std::invalid_argument("sigma must lie in [0, 1], got " + to_fraction_string(value_));
  }
}

Delta::Delta(Rational value) : value_(value) {
  if (value_ < 0 || value_ > Rational(1, 2)) {
    throw std::invalid_argument("delta must lie in [0, 1/2], got " + to_fraction_string(value_));
  }
}

AlternativeSet::AlternativeSet(std::vector<std::string> ids, std::string_view reality) : ids_(std::move(ids)) {
  if (ids_.empty()) {
    throw std::invalid_argument("no alternatives");
  }
  std::vector<std::string> sorted = ids_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate alternative identifier");
  }
  for (const auto& id : ids_) {
    if (id.empty()) {
      throw std::invalid_argument("empty alternative identifier");
    }
  }
  auto it = std::find(ids_.begin(), ids_.end(), reality);
  if (it == ids_.end()) {
    throw std::invalid_argument("reality '" + std::string(reality) + "' is not an alternative");
  }
  reality_ = static_cast<AlternativeIndex>(it - ids_.begin());
}

AlternativeIndex AlternativeSet::index_of(std::string_view id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) {
    throw std::invalid_argument("unknown alternative '" + std::string(id) + "'");
  }
  return static_cast<AlternativeIndex>(it - ids_.begin());
}

Count BinaryProfile::proposal_votes() const {
  return std::count(votes.begin(), votes.end(), Ballot::Proposal);
}

void validate_ranking(const Ranking& ranking, std::size_t alternatives) {
  if (ranking.size() != alternatives) {
    throw std::invalid_argument("invalid ballot: ranking must list every alternative exactly once");
  }
  std::vector<bool> seen(alternatives, false);
  for (auto a : ranking) {
    if (a >= alternatives || seen[a]) {
      throw std::invalid_argument("invalid ballot: ranking must list every alternative exactly once");
    }
    seen[a] = true;
  }
}

OrdinalProfile::OrdinalProfile(AlternativeSet alternatives, std::vector<Ranking> rankings)
    : alternatives_(std::move(alternatives)), rankings_(std::move(rankings)) {
  for (const auto& ranking : rankings_) {
    validate_ranking(ranking, alternatives_.size());
  }
}

std::string_view to_string(ContestKind kind) {
  switch (kind) {
    case ContestKind::Proposal: return "proposal";
    case ContestKind::Viability: return "viability";
    case ContestKind::Condorcet: return "condorcet";
    case ContestKind::Agenda: return "agenda";
    case ContestKind::FinalCheck: return "final-check";
  }
  return "unknown";
}

bool DecisionOutcome::elects(AlternativeIndex a) const {
  return std::binary_search(winners.begin(), winners.end(), a);
}

bool strict_supermajority(Count count_for, Count total, const Delta& delta) {
  auto [lhs, rhs] = threshold_sides(count_for, total, delta);
  return lhs > rhs;
}

bool reaches_fraction(Count count_for, Count total, const Delta& delta) {
  auto [lhs, rhs] = threshold_sides(count_for, total, delta);
  return lhs >= rhs;
}

bool exactly_at_threshold(Count count_for, Count total, const Delta& delta) {
  auto [lhs, rhs] = threshold_sides(count_for, total, delta);
  return lhs == rhs;
}

SigmaBound sybil_fraction(const Electorate& electorate) {
  return SigmaBound(Rational(static_cast<std::int64_t>(electorate.sybils().size()),
                             static_cast<std::int64_t>(electorate.size())));
}

BinaryProfile restrict_to_genuine(const BinaryProfile& profile, const Electorate& electorate) {
  return BinaryProfile{genuine_ballots<BinaryProfile>(profile.votes, electorate)};
}

OrdinalProfile restrict_to_genuine(const OrdinalProfile& profile, const Electorate& electorate) {
  return OrdinalProfile(profile.alternatives(), genuine_ballots<OrdinalProfile>(profile.rankings(), electorate));
}

ParameterProfile restrict_to_genuine(const ParameterProfile& profile, const Electorate& electorate) {
  return ParameterProfile{profile.current, genuine_ballots<ParameterProfile>(profile.ideal_points, electorate)};
}

}  // namespace sybil
