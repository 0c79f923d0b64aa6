#include <map>
#include <random>
#include <set>

#include "harness_internal.hpp"
#include "sybil/enumeration.hpp"
#include "sybil/parallel.hpp"

namespace sybil::audit {
namespace {

using Multiset = std::vector<std::uint8_t>;

void check_universe(const ParameterUniverse& universe) {
  if (universe.grid.empty() || universe.grid.size() > 64) {
    throw std::invalid_argument("parameter grid must have 1 to 64 values");
  }
  if (universe.min_n == 0 || universe.min_n > universe.max_n) {
    throw std::invalid_argument("invalid electorate size range");
  }
}

class GridSpace {
 public:
  explicit GridSpace(const ParameterUniverse& universe) : grid_(universe.grid) {}

  const std::vector<Multiset>& multisets(std::size_t size) {
    auto it = cache_.find(size);
    if (it == cache_.end()) {
      it = cache_.emplace(size, all_multisets(grid_.size(), size)).first;
    }
    return it->second;
  }

  std::vector<Decimal> values(const Multiset& genuine, const Multiset& sybils = {}) const {
    std::vector<Decimal> out;
    out.reserve(genuine.size() + sybils.size());
    for (auto i : genuine) out.push_back(grid_[i]);
    for (auto i : sybils) out.push_back(grid_[i]);
    return out;
  }

  std::size_t kinds() const { return grid_.size(); }
  const std::vector<Decimal>& grid() const { return grid_; }

 private:
  std::vector<Decimal> grid_;
  std::map<std::size_t, std::vector<Multiset>> cache_;
};

struct Block {
  Decimal r;
  std::size_t n;
  PenetrationPlan::Entry entry;
  std::size_t index;
};

bool on_side(const Decimal& value, const Decimal& r, Direction direction) {
  return direction == Direction::Up ? value > r : value < r;
}

bool band_admits(const MedianBand& band, const Decimal& value) {
  return value == band.current || band.spans(value);
}

}  // namespace

AuditVerdict check_safety_instance(const ParameterRule& rule, const ParameterBaseRule& base,
                                   const Electorate& electorate, const ParameterProfile& full_profile,
                                   const ParameterProfile& honest_profile) {
  if (full_profile.size() != electorate.size()) {
    throw std::invalid_argument("profile and electorate sizes differ");
  }
  if (honest_profile != restrict_to_genuine(full_profile, electorate)) {
    throw std::invalid_argument("honest profile is not the genuine restriction of the full profile");
  }
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = 1;
  ParameterDecision out = rule(full_profile);
  if (out.value == full_profile.current) {
    return verdict;
  }
  MedianBand band = base(honest_profile);
  if (band_admits(band, out.value)) {
    return verdict;
  }
  verdict.holds = false;
  ParameterWitness witness{ParameterInstance{electorate, full_profile, sybil_fraction(electorate)}, std::move(out)};
  witness.base_output = std::move(band);
  verdict.witness = std::move(witness);
  return verdict;
}

std::uint64_t safety_universe_size(const ParameterUniverse& universe) {
  check_universe(universe);
  std::uint64_t total = 0;
  for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
    for (const auto& entry : universe.penetration.entries(n)) {
      total = saturating_add(total, saturating_mul(multiset_count(universe.grid.size(), n - entry.sybils),
                                                   multiset_count(universe.grid.size(), entry.sybils)));
    }
  }
  return saturating_mul(total, universe.reality_values().size());
}

AuditVerdict exhaustive_safety(const RuleFactory<ParameterRule>& rule, const ParameterBaseRule& base,
                               const ParameterUniverse& universe, const AuditOptions& options) {
  AuditVerdict verdict;
  verdict.property = Property::Safety;
  verdict.universe_size = safety_universe_size(universe);
  detail::enforce_budget(verdict.universe_size, options);

  GridSpace space(universe);
  std::vector<Block> blocks;
  for (const auto& r : universe.reality_values()) {
    for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
      for (const auto& entry : universe.penetration.entries(n)) {
        space.multisets(entry.sybils);
        const auto count = space.multisets(n - entry.sybils).size();
        for (std::size_t g = 0; g < count; ++g) {
          blocks.push_back({r, n, entry, g});
        }
      }
    }
  }

  auto found = sybil::detail::first_failure<ParameterWitness>(
      blocks.size(), options.threads, [&](std::size_t b) -> std::optional<ParameterWitness> {
        const Block& block = blocks[b];
        const auto& genuine = space.multisets(block.n - block.entry.sybils)[block.index];
        const ParameterRule configured = rule(block.entry.configured);
        const ParameterProfile honest{block.r, space.values(genuine)};
        std::optional<MedianBand> band;
        for (const auto& sybils : space.multisets(block.entry.sybils)) {
          ParameterProfile full{block.r, space.values(genuine, sybils)};
          ParameterDecision out = configured(full);
          if (out.value == block.r) {
            continue;
          }
          if (!band) band = base(honest);
          if (!band_admits(*band, out.value)) {
            ParameterWitness witness{
                ParameterInstance{detail::genuine_then_sybils(genuine.size(), sybils.size()), std::move(full),
                                  block.entry.configured},
                std::move(out)};
            witness.base_output = *band;
            return witness;
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

AuditVerdict check_liveness(const RuleFactory<ParameterRule>& rule, const ParameterUniverse& universe,
                            std::optional<Direction> direction, const AuditOptions& options) {
  check_universe(universe);
  AuditVerdict verdict;
  verdict.property = Property::Liveness;
  GridSpace space(universe);
  std::vector<Direction> directions;
  if (!direction || *direction == Direction::Up) directions.push_back(Direction::Up);
  if (!direction || *direction == Direction::Down) directions.push_back(Direction::Down);

  std::vector<Block> blocks;
  for (const auto& r : universe.reality_values()) {
    for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
      for (const auto& entry : universe.penetration.entries(n)) {
        const std::uint64_t sybil_space = multiset_count(space.kinds(), entry.sybils);
        const std::uint64_t genuine_space = space.kinds() + (options.search == LivenessSearch::Existential
                                                                 ? multiset_count(space.kinds(), n - entry.sybils)
                                                                 : 0);
        verdict.universe_size = saturating_add(
            verdict.universe_size, saturating_mul(saturating_mul(sybil_space, directions.size()), genuine_space));
        for (std::size_t s = 0; s < sybil_space; ++s) {
          blocks.push_back({r, n, entry, s});
        }
      }
    }
  }
  detail::enforce_budget(verdict.universe_size, options);
  for (const auto& block : blocks) {
    space.multisets(block.entry.sybils);
    if (options.search == LivenessSearch::Existential) space.multisets(block.n - block.entry.sybils);
  }

  auto found = sybil::detail::first_failure<ParameterWitness>(
      blocks.size(), options.threads, [&](std::size_t b) -> std::optional<ParameterWitness> {
        const Block& block = blocks[b];
        const std::size_t genuine_count = block.n - block.entry.sybils;
        const auto& sybils = space.multisets(block.entry.sybils)[block.index];
        const ParameterRule configured = rule(block.entry.configured);
        auto fail = [&](ParameterProfile profile, ParameterDecision out, const Decimal& q, Direction d) {
          ParameterWitness witness{ParameterInstance{detail::genuine_then_sybils(genuine_count, sybils.size()),
                                                     std::move(profile), block.entry.configured},
                                   std::move(out)};
          witness.target = q;
          witness.direction = d;
          return witness;
        };
        for (Direction d : directions) {
          std::vector<std::uint8_t> targets;
          for (std::size_t i = 0; i < space.kinds(); ++i) {
            if (on_side(space.grid()[i], block.r, d)) targets.push_back(static_cast<std::uint8_t>(i));
          }
          if (targets.empty()) {
            continue;
          }
          std::optional<ParameterWitness> first_miss;
          bool reached = false;
          for (auto q : targets) {
            ParameterProfile profile{block.r, space.values(Multiset(genuine_count, q), sybils)};
            ParameterDecision out = configured(profile);
            if (on_side(out.value, block.r, d)) {
              reached = true;
              if (options.search == LivenessSearch::Existential) break;
            } else if (options.search == LivenessSearch::EveryUnanimousTarget) {
              return fail(std::move(profile), std::move(out), space.grid()[q], d);
            } else if (!first_miss) {
              first_miss = fail(std::move(profile), std::move(out), space.grid()[q], d);
            }
          }
          if (!reached && options.search == LivenessSearch::Existential) {
            for (const auto& genuine : space.multisets(genuine_count)) {
              if (on_side(configured(ParameterProfile{block.r, space.values(genuine, sybils)}).value, block.r, d)) {
                reached = true;
                break;
              }
            }
            if (!reached) return first_miss;
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

AuditVerdict less_conservative_check(const RuleFactory<ParameterRule>& rule_a,
                                     const RuleFactory<ParameterRule>& rule_b, const ParameterUniverse& universe,
                                     const AuditOptions& options) {
  check_universe(universe);
  AuditVerdict verdict;
  verdict.property = Property::LessConservative;
  GridSpace space(universe);

  struct LcBlock {
    Decimal r;
    std::size_t n;
    SigmaBound sigma;
  };
  std::vector<LcBlock> blocks;
  for (const auto& r : universe.reality_values()) {
    for (std::size_t n = universe.min_n; n <= universe.max_n; ++n) {
      std::vector<Rational> seen;
      for (const auto& entry : universe.penetration.entries(n)) {
        if (std::find(seen.begin(), seen.end(), entry.configured.value()) != seen.end()) continue;
        seen.push_back(entry.configured.value());
        blocks.push_back({r, n, entry.configured});
        verdict.universe_size = saturating_add(verdict.universe_size, multiset_count(space.kinds(), n));
        space.multisets(n);
      }
    }
  }
  detail::enforce_budget(verdict.universe_size, options);

  auto found = sybil::detail::first_failure<ParameterWitness>(
      blocks.size(), options.threads, [&](std::size_t b) -> std::optional<ParameterWitness> {
        const LcBlock& block = blocks[b];
        const ParameterRule a = rule_a(block.sigma);
        const ParameterRule bb = rule_b(block.sigma);
        for (const auto& votes : space.multisets(block.n)) {
          ParameterProfile profile{block.r, space.values(votes)};
          ParameterDecision out_a = a(profile);
          ParameterDecision out_b = bb(profile);
          if (violates_less_conservative(block.r, out_a.value, out_b.value)) {
            ParameterWitness witness{
                ParameterInstance{detail::genuine_then_sybils(block.n, 0), std::move(profile), block.sigma},
                std::move(out_a)};
            witness.other_output = std::move(out_b);
            return witness;
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

AuditVerdict less_conservative_random(const RuleFactory<ParameterRule>& rule_a,
                                      const RuleFactory<ParameterRule>& rule_b, const RandomParameterSpec& spec) {
  if (spec.max_n == 0 || spec.sigma_denominator < 1 || spec.fraction_digits < 0 || spec.fraction_digits > 9) {
    throw std::invalid_argument("invalid random universe");
  }
  AuditVerdict verdict;
  verdict.property = Property::LessConservative;
  verdict.universe_size = spec.instances;
  std::int64_t scale = 1;
  for (int i = 0; i < spec.fraction_digits; ++i) scale *= 10;
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, spec.max_n);
  std::uniform_int_distribution<std::int64_t> value_dist(-spec.range * scale, spec.range * scale);
  std::uniform_int_distribution<std::int64_t> sigma_dist(0, spec.sigma_denominator - 1);
  auto draw = [&] { return Decimal::from_scaled(value_dist(rng), spec.fraction_digits); };

  for (std::size_t i = 0; i < spec.instances; ++i) {
    const std::size_t n = size_dist(rng);
    const SigmaBound sigma(Rational(sigma_dist(rng), spec.sigma_denominator));
    ParameterProfile profile{draw(), {}};
    for (std::size_t k = 0; k < n; ++k) profile.ideal_points.push_back(draw());
    ParameterDecision out_a = rule_a(sigma)(profile);
    ParameterDecision out_b = rule_b(sigma)(profile);
    if (violates_less_conservative(profile.current, out_a.value, out_b.value)) {
      ParameterWitness witness{ParameterInstance{detail::genuine_then_sybils(n, 0), std::move(profile), sigma},
                               std::move(out_a)};
      witness.other_output = std::move(out_b);
      verdict.holds = false;
      verdict.witness = std::move(witness);
      return verdict;
    }
  }
  return verdict;
}

bool safety_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule,
                               const ParameterBaseRule& base) {
  const auto& instance = witness.instance;
  const ParameterDecision out = rule(instance.configured)(instance.profile);
  const MedianBand band = base(restrict_to_genuine(instance.profile, instance.electorate));
  return witness.base_output && out.value == witness.rule_output.value &&
         band.median == witness.base_output->median && band.members == witness.base_output->members &&
         out.value != instance.profile.current && !band_admits(band, out.value);
}

bool liveness_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule) {
  if (!witness.direction) return false;
  const ParameterDecision out = rule(witness.instance.configured)(witness.instance.profile);
  return out.value == witness.rule_output.value && !on_side(out.value, witness.instance.profile.current,
                                                            *witness.direction);
}

bool less_conservative_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule_a,
                                          const RuleFactory<ParameterRule>& rule_b) {
  if (!witness.other_output) return false;
  const auto& instance = witness.instance;
  const Decimal a = rule_a(instance.configured)(instance.profile).value;
  const Decimal b = rule_b(instance.configured)(instance.profile).value;
  return a == witness.rule_output.value && b == witness.other_output->value &&
         violates_less_conservative(instance.profile.current, a, b);
}

}  // namespace sybil::audit
