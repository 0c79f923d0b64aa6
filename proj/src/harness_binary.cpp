#include <bit>

#include "harness_internal.hpp"
#include "sybil/enumeration.hpp"
#include "sybil/parallel.hpp"

namespace sybil::audit {
namespace {

struct SafetyBlock {
  std::size_t n;
  PenetrationPlan::Entry entry;
  std::uint32_t sybil_mask;
};

struct LivenessBlock {
  std::size_t n;
  PenetrationPlan::Entry entry;
};

void check_size(std::size_t n) {
  if (n == 0 || n > 24) {
    throw std::invalid_argument("binary universe sizes must lie in [1, 24]");
  }
}

Electorate electorate_from_mask(std::size_t n, std::uint32_t sybil_mask) {
  std::vector<std::uint32_t> ids;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (sybil_mask & (1u << i)) ids.push_back(i);
  }
  return Electorate::with_sybils(n, ids);
}

}  // namespace

AuditVerdict check_safety_instance(const BinaryRule& rule, const BinaryRule& base, const Electorate& electorate,
                                   const BinaryProfile& full_profile, const BinaryProfile& honest_profile) {
  if (full_profile.size() != electorate.size()) {
    throw std::invalid_argument("profile and electorate sizes differ");
  }
  if (honest_profile != restrict_to_genuine(full_profile, electorate)) {
    throw std::invalid_argument("honest profile is not the genuine restriction of the full profile");
  }
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = 1;
  DecisionOutcome out = rule(full_profile);
  if (out.elects_only(kRealityIndex)) {
    return verdict;
  }
  DecisionOutcome base_out = base(honest_profile);
  if (detail::outcome_subset(out, base_out)) {
    return verdict;
  }
  verdict.holds = false;
  verdict.witness = BinaryWitness{BinaryInstance{electorate, full_profile, sybil_fraction(electorate)},
                                  std::move(out), std::move(base_out)};
  return verdict;
}

std::uint64_t safety_universe_size(const BinaryUniverse& universe) {
  std::uint64_t total = 0;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    check_size(n);
    for (const auto& entry : universe.penetration.entries(n)) {
      total = saturating_add(total, saturating_mul(binomial(n, entry.sybils), std::uint64_t{1} << n));
    }
  }
  return total;
}

AuditVerdict exhaustive_safety(const RuleFactory<BinaryRule>& rule, const BinaryRule& base,
                               const BinaryUniverse& universe, const AuditOptions& options) {
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = safety_universe_size(universe);
  detail::enforce_budget(verdict.universe_size, options);

  std::vector<SafetyBlock> blocks;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    for (const auto& entry : universe.penetration.entries(n)) {
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) == entry.sybils) {
          blocks.push_back({n, entry, mask});
        }
      }
    }
  }

  auto found = sybil::detail::first_failure<BinaryWitness>(blocks.size(), options.threads, [&](std::size_t b)
                                                                                     -> std::optional<BinaryWitness> {
    const SafetyBlock& block = blocks[b];
    const BinaryRule configured = rule(block.entry.configured);
    BinaryProfile full{std::vector<Ballot>(block.n)};
    BinaryProfile honest{std::vector<Ballot>(block.n - block.entry.sybils)};
    for (std::uint32_t votes = 0; votes < (1u << block.n); ++votes) {
      std::size_t h = 0;
      for (std::uint32_t i = 0; i < block.n; ++i) {
        const Ballot ballot = (votes & (1u << i)) ? Ballot::Proposal : Ballot::Reality;
        full.votes[i] = ballot;
        if (!(block.sybil_mask & (1u << i))) honest.votes[h++] = ballot;
      }
      DecisionOutcome out = configured(full);
      if (out.elects_only(kRealityIndex)) {
        continue;
      }
      DecisionOutcome base_out = base(honest);
      if (!detail::outcome_subset(out, base_out)) {
        return BinaryWitness{BinaryInstance{electorate_from_mask(block.n, block.sybil_mask), full,
                                            block.entry.configured},
                             std::move(out), std::move(base_out)};
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

AuditVerdict check_liveness(const RuleFactory<BinaryRule>& rule, const BinaryUniverse& universe,
                            const AuditOptions& options) {
  AuditVerdict verdict;
  verdict.property = Property::Liveness;
  std::vector<LivenessBlock> blocks;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    check_size(n);
    for (const auto& entry : universe.penetration.entries(n)) {
      blocks.push_back({n, entry});
      const std::uint64_t genuine_space =
          options.search == LivenessSearch::Existential ? 1 + (n - entry.sybils + 1) : 1;
      verdict.universe_size =
          saturating_add(verdict.universe_size, saturating_mul(entry.sybils + 1, genuine_space));
    }
  }
  detail::enforce_budget(verdict.universe_size, options);

  // Sybil and genuine assignments are enumerated by count: the first k
  // sybils (or genuine agents) vote for the proposal.
  auto found = sybil::detail::first_failure<BinaryWitness>(blocks.size(), options.threads, [&](std::size_t b)
                                                                                     -> std::optional<BinaryWitness> {
    const LivenessBlock& block = blocks[b];
    const std::size_t sybils = block.entry.sybils;
    const std::size_t genuine = block.n - sybils;
    const BinaryRule configured = rule(block.entry.configured);
    auto profile_for = [&](std::size_t genuine_yes, std::size_t sybil_yes) {
      BinaryProfile profile{std::vector<Ballot>(block.n, Ballot::Reality)};
      for (std::size_t i = 0; i < genuine_yes; ++i) profile.votes[i] = Ballot::Proposal;
      for (std::size_t i = 0; i < sybil_yes; ++i) profile.votes[genuine + i] = Ballot::Proposal;
      return profile;
    };
    for (std::size_t sybil_yes = 0; sybil_yes <= sybils; ++sybil_yes) {
      BinaryProfile unanimous = profile_for(genuine, sybil_yes);
      DecisionOutcome out = configured(unanimous);
      bool reached = out.elects(kProposalIndex);
      if (!reached && options.search == LivenessSearch::Existential) {
        for (std::size_t yes = genuine; yes-- > 0 && !reached;) {
          reached = configured(profile_for(yes, sybil_yes)).elects(kProposalIndex);
        }
      }
      if (!reached) {
        return BinaryWitness{
            BinaryInstance{detail::genuine_then_sybils(genuine, sybils), std::move(unanimous), block.entry.configured},
            std::move(out), std::nullopt};
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

bool safety_witness_reproduces(const BinaryWitness& witness, const RuleFactory<BinaryRule>& rule,
                               const BinaryRule& base) {
  const auto& instance = witness.instance;
  const DecisionOutcome out = rule(instance.configured)(instance.profile);
  const DecisionOutcome base_out = base(restrict_to_genuine(instance.profile, instance.electorate));
  return witness.base_output && out == witness.rule_output && base_out == *witness.base_output &&
         !out.elects_only(kRealityIndex) && !detail::outcome_subset(out, base_out);
}

bool liveness_witness_reproduces(const BinaryWitness& witness, const RuleFactory<BinaryRule>& rule) {
  const DecisionOutcome out = rule(witness.instance.configured)(witness.instance.profile);
  return out == witness.rule_output && !out.elects(kProposalIndex);
}

}  // namespace sybil::audit
