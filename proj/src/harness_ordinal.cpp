#include <map>

#include "harness_internal.hpp"
#include "sybil/enumeration.hpp"
#include "sybil/parallel.hpp"

namespace sybil::audit {
namespace {

using Multiset = std::vector<std::uint8_t>;

/// Per-universe lookup tables: every ranking, its one-voter tally, and the
/// ballot multisets of each size that the enumeration needs.
class BallotSpace {
 public:
  explicit BallotSpace(const OrdinalUniverse& universe)
      : alternatives_(universe.alternative_set()), rankings_(all_rankings(universe.alternatives)) {
    for (const auto& ranking : rankings_) {
      PairwiseTally single(universe.alternatives, alternatives_.reality());
      single.add(ranking);
      singles_.push_back(std::move(single));
    }
  }

  const AlternativeSet& alternatives() const { return alternatives_; }
  std::size_t kinds() const { return rankings_.size(); }

  const std::vector<Multiset>& multisets(std::size_t size) {
    auto it = cache_.find(size);
    if (it == cache_.end()) {
      it = cache_.emplace(size, all_multisets(kinds(), size)).first;
    }
    return it->second;
  }

  PairwiseTally tally(const Multiset& ballots) const {
    PairwiseTally out(alternatives_.size(), alternatives_.reality());
    for (auto b : ballots) out += singles_[b];
    return out;
  }

  void append_rankings(const Multiset& ballots, std::vector<Ranking>& out) const {
    for (auto b : ballots) out.push_back(rankings_[b]);
  }

  OrdinalProfile profile(const Multiset& genuine, const Multiset& sybils) const {
    std::vector<Ranking> rankings;
    append_rankings(genuine, rankings);
    append_rankings(sybils, rankings);
    return OrdinalProfile(alternatives_, std::move(rankings));
  }

  /// Target first, the rest in index order.
  std::uint8_t unanimous_ballot(AlternativeIndex target) const {
    Ranking wanted{target};
    for (AlternativeIndex a = 0; a < alternatives_.size(); ++a) {
      if (a != target) wanted.push_back(a);
    }
    for (std::size_t i = 0; i < rankings_.size(); ++i) {
      if (rankings_[i] == wanted) return static_cast<std::uint8_t>(i);
    }
    throw std::logic_error("unanimous ballot not found");
  }

 private:
  AlternativeSet alternatives_;
  std::vector<Ranking> rankings_;
  std::vector<PairwiseTally> singles_;
  std::map<std::size_t, std::vector<Multiset>> cache_;
};

void check_universe(const OrdinalUniverse& universe) {
  if (universe.alternatives < 2 || universe.alternatives > 5) {
    throw std::invalid_argument("ordinal universes support 2 to 5 alternatives");
  }
  if (universe.min_n == 0 || universe.min_n > universe.max_n) {
    throw std::invalid_argument("invalid electorate size range");
  }
}

struct Block {
  std::size_t n;
  PenetrationPlan::Entry entry;
  std::size_t index;  // genuine multiset (safety) or sybil multiset (liveness)
};

}  // namespace

AlternativeSet OrdinalUniverse::alternative_set() const {
  std::vector<std::string> ids{"r"};
  for (std::size_t i = 1; i < alternatives; ++i) {
    ids.emplace_back(1, static_cast<char>('a' + i - 1));
  }
  return AlternativeSet(std::move(ids), "r");
}

AuditVerdict check_safety_instance(const OrdinalRule& rule, const OrdinalRule& base, const Electorate& electorate,
                                   const OrdinalProfile& full_profile, const OrdinalProfile& honest_profile) {
  if (full_profile.size() != electorate.size()) {
    throw std::invalid_argument("profile and electorate sizes differ");
  }
  if (honest_profile != restrict_to_genuine(full_profile, electorate)) {
    throw std::invalid_argument("honest profile is not the genuine restriction of the full profile");
  }
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = 1;
  const AlternativeIndex r = full_profile.alternatives().reality();
  DecisionOutcome out = rule(pairwise_tally(full_profile));
  if (out.elects_only(r)) {
    return verdict;
  }
  DecisionOutcome base_out = base(pairwise_tally(honest_profile));
  if (detail::outcome_subset(out, base_out)) {
    return verdict;
  }
  verdict.holds = false;
  verdict.witness = OrdinalWitness{OrdinalInstance{electorate, full_profile, sybil_fraction(electorate)},
                                   std::move(out), std::move(base_out), std::nullopt};
  return verdict;
}

std::uint64_t safety_universe_size(const OrdinalUniverse& universe) {
  check_universe(universe);
  const std::uint64_t kinds = all_rankings(universe.alternatives).size();
  std::uint64_t total = 0;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    for (const auto& entry : universe.penetration.entries(n)) {
      total = saturating_add(total, saturating_mul(multiset_count(kinds, n - entry.sybils),
                                                   multiset_count(kinds, entry.sybils)));
    }
  }
  return total;
}

AuditVerdict exhaustive_safety(const RuleFactory<OrdinalRule>& rule, const OrdinalRule& base,
                               const OrdinalUniverse& universe, const AuditOptions& options) {
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = safety_universe_size(universe);
  detail::enforce_budget(verdict.universe_size, options);

  BallotSpace space(universe);
  std::vector<Block> blocks;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    for (const auto& entry : universe.penetration.entries(n)) {
      space.multisets(entry.sybils);
      const auto& genuine = space.multisets(n - entry.sybils);
      for (std::size_t g = 0; g < genuine.size(); ++g) {
        blocks.push_back({n, entry, g});
      }
    }
  }
  const AlternativeIndex r = space.alternatives().reality();

  auto found = sybil::detail::first_failure<OrdinalWitness>(blocks.size(), options.threads, [&](std::size_t b)
                                                                                      -> std::optional<OrdinalWitness> {
    const Block& block = blocks[b];
    const auto& genuine = space.multisets(block.n - block.entry.sybils)[block.index];
    const OrdinalRule configured = rule(block.entry.configured);
    const PairwiseTally honest = space.tally(genuine);
    std::optional<DecisionOutcome> base_out;
    for (const auto& sybils : space.multisets(block.entry.sybils)) {
      PairwiseTally full = honest;
      full += space.tally(sybils);
      DecisionOutcome out = configured(full);
      if (out.elects_only(r)) {
        continue;
      }
      if (!base_out) base_out = base(honest);
      if (!detail::outcome_subset(out, *base_out)) {
        return OrdinalWitness{
            OrdinalInstance{detail::genuine_then_sybils(genuine.size(), sybils.size()), space.profile(genuine, sybils),
                            block.entry.configured},
            std::move(out), *base_out, std::nullopt};
      }
    }
    return std::nullopt;
  });

  if (found) {
    verdict.holds = false;
    verdict.witness = std::move(found->second);
  }
  return verdict;
}

AuditVerdict check_liveness(const RuleFactory<OrdinalRule>& rule, const OrdinalUniverse& universe,
                            std::optional<AlternativeIndex> target, const AuditOptions& options) {
  check_universe(universe);
  AuditVerdict verdict;
  verdict.property = Property::Liveness;
  BallotSpace space(universe);
  const AlternativeIndex r = space.alternatives().reality();
  std::vector<AlternativeIndex> targets;
  for (AlternativeIndex a = 0; a < space.alternatives().size(); ++a) {
    if (a != r && (!target || *target == a)) targets.push_back(a);
  }
  if (target && targets.empty()) {
    throw std::invalid_argument("liveness target must be a non-reality alternative");
  }

  std::vector<Block> blocks;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    for (const auto& entry : universe.penetration.entries(n)) {
      const std::uint64_t genuine_space = options.search == LivenessSearch::Existential
                                              ? 1 + multiset_count(space.kinds(), n - entry.sybils)
                                              : 1;
      const std::uint64_t sybil_space = multiset_count(space.kinds(), entry.sybils);
      verdict.universe_size = saturating_add(
          verdict.universe_size, saturating_mul(saturating_mul(sybil_space, targets.size()), genuine_space));
      for (std::size_t s = 0; s < sybil_space; ++s) {
        blocks.push_back({n, entry, s});
      }
    }
  }
  detail::enforce_budget(verdict.universe_size, options);
  for (const auto& block : blocks) {
    space.multisets(block.entry.sybils);
    if (options.search == LivenessSearch::Existential) space.multisets(block.n - block.entry.sybils);
  }

  auto found = sybil::detail::first_failure<OrdinalWitness>(blocks.size(), options.threads, [&](std::size_t b)
                                                                                      -> std::optional<OrdinalWitness> {
    const Block& block = blocks[b];
    const std::size_t genuine_count = block.n - block.entry.sybils;
    const auto& sybils = space.multisets(block.entry.sybils)[block.index];
    const PairwiseTally sybil_tally = space.tally(sybils);
    const OrdinalRule configured = rule(block.entry.configured);
    for (AlternativeIndex a : targets) {
      const Multiset unanimous(genuine_count, space.unanimous_ballot(a));
      PairwiseTally full = space.tally(unanimous);
      full += sybil_tally;
      DecisionOutcome out = configured(full);
      bool reached = out.elects(a);
      if (!reached && options.search == LivenessSearch::Existential) {
        for (const auto& genuine : space.multisets(genuine_count)) {
          PairwiseTally attempt = space.tally(genuine);
          attempt += sybil_tally;
          if (configured(attempt).elects(a)) {
            reached = true;
            break;
          }
        }
      }
      if (!reached) {
        return OrdinalWitness{
            OrdinalInstance{detail::genuine_then_sybils(genuine_count, sybils.size()),
                            space.profile(unanimous, sybils), block.entry.configured},
            std::move(out), std::nullopt, a};
      }
    }
    return std::nullopt;
  });

  if (found) {
    verdict.holds = false;
    verdict.witness = std::move(found->second);
  }
  return verdict;
}

bool safety_witness_reproduces(const OrdinalWitness& witness, const RuleFactory<OrdinalRule>& rule,
                               const OrdinalRule& base) {
  const auto& instance = witness.instance;
  const AlternativeIndex r = instance.profile.alternatives().reality();
  const DecisionOutcome out = rule(instance.configured)(pairwise_tally(instance.profile));
  const DecisionOutcome base_out =
      base(pairwise_tally(restrict_to_genuine(instance.profile, instance.electorate)));
  return witness.base_output && out == witness.rule_output && base_out == *witness.base_output &&
         !out.elects_only(r) && !detail::outcome_subset(out, base_out);
}

bool liveness_witness_reproduces(const OrdinalWitness& witness, const RuleFactory<OrdinalRule>& rule) {
  if (!witness.target) return false;
  const DecisionOutcome out = rule(witness.instance.configured)(pairwise_tally(witness.instance.profile));
  return out == witness.rule_output && !out.elects(*witness.target);
}

}  // namespace sybil::audit
