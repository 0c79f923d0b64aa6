#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sybil/core.hpp"
#include "sybil/ordinal_rules.hpp"
#include "sybil/parameter_rules.hpp"

// Brute-force audits of sybil safety, sybil liveness and relative
// conservatism over finite instance universes.
//
// Rules under audit are built from a factory that receives the configured
// penetration bound; the rule itself only ever sees an untagged profile.
// The harness owns the genuine/sybil split and uses it to build the honest
// sub-profile for the base rule.
//
// Ordinal and parameter universes enumerate ballot multisets rather than
// labelled profiles. Every rule here is anonymous (a function of the ballot
// multiset), so this loses nothing; the binary universe is small enough to
// enumerate every labelled partition and profile outright.
namespace sybil::audit {

enum class Property { Safety, Liveness, LessConservative };
std::string_view to_string(Property property);

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget);
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Which sybil counts to enumerate for an electorate of n agents, and which
/// penetration bound the rules are configured with.
struct PenetrationPlan {
  enum class Kind {
    TrueRatio,   // every |S| in [0, n-1]; rules get |S|/n
    AtMost,      // |S| <= sigma * n
    Below,       // |S| < sigma * n
    FixedCount,  // exactly `count` sybils; rules get count/n
  };

  Kind kind = Kind::TrueRatio;
  Rational sigma{0};
  std::size_t count = 0;
  /// When set, rules receive this bound regardless of the true penetration.
  /// Used to stage scenarios where the real sybil share exceeds the bound.
  std::optional<Rational> rule_sigma;

  static PenetrationPlan true_ratio();
  static PenetrationPlan at_most(Rational sigma);
  static PenetrationPlan below(Rational sigma);
  static PenetrationPlan fixed(std::size_t sybils);

  struct Entry {
    std::size_t sybils;
    SigmaBound configured;
  };
  /// At least one genuine agent is always kept.
  std::vector<Entry> entries(std::size_t n) const;
};

struct BinaryUniverse {
  std::size_t min_n = 1;
  std::size_t max_n = 1;
  PenetrationPlan penetration;
};

struct OrdinalUniverse {
  std::size_t alternatives = 3;  // reality plus m-1 others
  std::size_t min_n = 1;
  std::size_t max_n = 1;
  PenetrationPlan penetration;

  AlternativeSet alternative_set() const;  // "r", "a", "b", ... with reality first
};

struct ParameterUniverse {
  std::vector<Decimal> grid{0, 1, 2, 3, 4};
  std::vector<Decimal> realities;  // empty: every grid value
  std::size_t min_n = 1;
  std::size_t max_n = 1;
  PenetrationPlan penetration;

  const std::vector<Decimal>& reality_values() const { return realities.empty() ? grid : realities; }
};

using BinaryRule = std::function<DecisionOutcome(const BinaryProfile&)>;
/// Ordinal rules here are functions of the pairwise tally.
using OrdinalRule = std::function<DecisionOutcome(const PairwiseTally&)>;
using ParameterRule = std::function<ParameterDecision(const ParameterProfile&)>;
using ParameterBaseRule = std::function<MedianBand(const ParameterProfile&)>;

template <typename Rule>
using RuleFactory = std::function<Rule(const SigmaBound& configured)>;

/// Factory for a rule that ignores the configured bound.
template <typename Rule>
RuleFactory<Rule> fixed_rule(Rule rule) {
  return [rule = std::move(rule)](const SigmaBound&) { return rule; };
}

struct BinaryInstance {
  Electorate electorate;
  BinaryProfile profile;
  SigmaBound configured;
};

struct OrdinalInstance {
  Electorate electorate;
  OrdinalProfile profile;
  SigmaBound configured;
};

struct ParameterInstance {
  Electorate electorate;
  ParameterProfile profile;
  SigmaBound configured;
};

struct BinaryWitness {
  BinaryInstance instance;
  DecisionOutcome rule_output;
  std::optional<DecisionOutcome> base_output;  // safety only
};

struct OrdinalWitness {
  OrdinalInstance instance;
  DecisionOutcome rule_output;
  std::optional<DecisionOutcome> base_output;   // safety only
  std::optional<AlternativeIndex> target;       // liveness only
};

enum class Direction { Up, Down };
std::string_view to_string(Direction direction);

struct ParameterWitness {
  ParameterInstance instance;
  ParameterDecision rule_output;
  std::optional<MedianBand> base_output;         // safety only
  std::optional<ParameterDecision> other_output;  // less-conservative only: rule B
  std::optional<Decimal> target;                  // liveness only: the unanimous genuine value tried
  std::optional<Direction> direction;             // liveness only
};

using Witness = std::variant<BinaryWitness, OrdinalWitness, ParameterWitness>;

struct AuditVerdict {
  Property property = Property::Safety;
  bool holds = true;
  /// Present whenever holds is false.
  std::optional<Witness> witness;
  /// Instances in the universe, computed before enumeration starts.
  std::uint64_t universe_size = 0;
};

enum class LivenessSearch {
  /// Some genuine profile must reach the target. Tries
  /// genuine unanimity first, then every genuine ballot multiset.
  Existential,
  /// Every unanimous genuine profile at a target must reach it.
  EveryUnanimousTarget,
};

struct AuditOptions {
  std::uint64_t budget = 500'000'000;
  unsigned threads = 0;  // 0: hardware concurrency
  LivenessSearch search = LivenessSearch::Existential;
};

// Single-instance safety: holds iff the rule elects only reality or its
// winners are a subset of the base rule's winners on the honest profile.
AuditVerdict check_safety_instance(const BinaryRule& rule, const BinaryRule& base, const Electorate& electorate,
                                   const BinaryProfile& full_profile, const BinaryProfile& honest_profile);
AuditVerdict check_safety_instance(const OrdinalRule& rule, const OrdinalRule& base, const Electorate& electorate,
                                   const OrdinalProfile& full_profile, const OrdinalProfile& honest_profile);
/// Parameter version: holds iff the new value is r or lies between r and the
/// reality-aware median of the honest votes.
AuditVerdict check_safety_instance(const ParameterRule& rule, const ParameterBaseRule& base,
                                   const Electorate& electorate, const ParameterProfile& full_profile,
                                   const ParameterProfile& honest_profile);

std::uint64_t safety_universe_size(const BinaryUniverse& universe);
std::uint64_t safety_universe_size(const OrdinalUniverse& universe);
std::uint64_t safety_universe_size(const ParameterUniverse& universe);

AuditVerdict exhaustive_safety(const RuleFactory<BinaryRule>& rule, const BinaryRule& base,
                               const BinaryUniverse& universe, const AuditOptions& options = {});
AuditVerdict exhaustive_safety(const RuleFactory<OrdinalRule>& rule, const OrdinalRule& base,
                               const OrdinalUniverse& universe, const AuditOptions& options = {});
AuditVerdict exhaustive_safety(const RuleFactory<ParameterRule>& rule, const ParameterBaseRule& base,
                               const ParameterUniverse& universe, const AuditOptions& options = {});

/// Binary target is always the proposal.
AuditVerdict check_liveness(const RuleFactory<BinaryRule>& rule, const BinaryUniverse& universe,
                            const AuditOptions& options = {});
/// Every non-reality alternative when target is empty.
AuditVerdict check_liveness(const RuleFactory<OrdinalRule>& rule, const OrdinalUniverse& universe,
                            std::optional<AlternativeIndex> target = std::nullopt,
                            const AuditOptions& options = {});
/// Directional: genuine agents must be able to move the value strictly
/// above (or below) r. Both directions when direction is empty; a direction
/// with no grid value on that side of r is skipped.
AuditVerdict check_liveness(const RuleFactory<ParameterRule>& rule, const ParameterUniverse& universe,
                            std::optional<Direction> direction = std::nullopt, const AuditOptions& options = {});

/// Holds iff on every instance r <= B <= A or A <= B <= r. Instances are
/// every vote multiset over the grid, every reality value, and every
/// configured bound the penetration plan yields.
AuditVerdict less_conservative_check(const RuleFactory<ParameterRule>& rule_a,
                                     const RuleFactory<ParameterRule>& rule_b, const ParameterUniverse& universe,
                                     const AuditOptions& options = {});

struct RandomParameterSpec {
  std::size_t instances = 100'000;
  std::size_t max_n = 101;
  std::uint64_t seed = 1;
  /// Ideal points and r are drawn uniformly from [-range, range] with
  /// `fraction_digits` decimal places.
  std::int64_t range = 1000;
  int fraction_digits = 6;
  /// Configured bounds are j / sigma_denominator for j in [0, denominator).
  std::int64_t sigma_denominator = 20;
};

AuditVerdict less_conservative_random(const RuleFactory<ParameterRule>& rule_a,
                                      const RuleFactory<ParameterRule>& rule_b, const RandomParameterSpec& spec);

/// Replays the rules on a witness. True iff the recorded outputs are
/// reproduced exactly and the recorded verdict still fails.
bool safety_witness_reproduces(const BinaryWitness& witness, const RuleFactory<BinaryRule>& rule,
                               const BinaryRule& base);
bool safety_witness_reproduces(const OrdinalWitness& witness, const RuleFactory<OrdinalRule>& rule,
                               const OrdinalRule& base);
bool safety_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule,
                               const ParameterBaseRule& base);
bool less_conservative_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule_a,
                                          const RuleFactory<ParameterRule>& rule_b);

/// Liveness witnesses: the recorded rule output is reproduced and still
/// misses the target.
bool liveness_witness_reproduces(const BinaryWitness& witness, const RuleFactory<BinaryRule>& rule);
bool liveness_witness_reproduces(const OrdinalWitness& witness, const RuleFactory<OrdinalRule>& rule);
bool liveness_witness_reproduces(const ParameterWitness& witness, const RuleFactory<ParameterRule>& rule);

/// True iff, for rule B and A as recorded, neither r <= B <= A nor A <= B <= r.
bool violates_less_conservative(const Decimal& r, const Decimal& a, const Decimal& b);

}  // namespace sybil::audit
