#include <doctest.h>

#include "sybil/harness.hpp"
#include "sybil/proposal_rules.hpp"

using namespace sybil;
using namespace sybil::audit;

namespace {

RuleFactory<BinaryRule> supermajority_at(std::function<Delta(const SigmaBound&)> delta) {
  return [delta](const SigmaBound& sigma) -> BinaryRule {
    const Delta d = delta(sigma);
    return [d](const BinaryProfile& p) { return supermajority_rule(p, d); };
  };
}

RuleFactory<BinaryRule> half_sigma_rule() { return supermajority_at(min_safe_delta); }

RuleFactory<OrdinalRule> agenda_rule(Variant variant, ContestScope scope, std::vector<AlternativeIndex> order) {
  return [=](const SigmaBound& sigma) -> OrdinalRule {
    const Delta d = min_safe_delta(sigma);
    return [=](const PairwiseTally& t) { return amendment_agenda(t, d, variant, order, scope); };
  };
}

RuleFactory<OrdinalRule> criterion_rule(ContestScope scope) {
  return [=](const SigmaBound& sigma) -> OrdinalRule {
    const Delta d = min_safe_delta(sigma);
    return [=](const PairwiseTally& t) { return supermajority_condorcet_rule(t, d, Variant::Conservative, scope); };
  };
}

const OrdinalRule kCondorcetBase = [](const PairwiseTally& t) {
  return base_condorcet_rule(t, Variant::Conservative);
};

RuleFactory<ParameterRule> suppress() {
  return [](const SigmaBound& sigma) -> ParameterRule {
    return [sigma](const ParameterProfile& p) { return suppress_outer_sigma(p, sigma); };
  };
}

RuleFactory<ParameterRule> simple() {
  return [](const SigmaBound& sigma) -> ParameterRule {
    return [sigma](const ParameterProfile& p) { return simple_update(p, sigma); };
  };
}

BinaryProfile ballots(std::initializer_list<char> items) {
  BinaryProfile out;
  for (char c : items) out.votes.push_back(c == 'p' ? Ballot::Proposal : Ballot::Reality);
  return out;
}

AuditOptions threads(unsigned n) {
  AuditOptions options;
  options.threads = n;
  return options;
}

}  // namespace

TEST_CASE("single binary instance") {
  // Agent 2 is the sybil.
  const std::vector<std::uint32_t> sybil_ids{2};
  const Electorate electorate = Electorate::with_sybils(3, sybil_ids);
  const BinaryProfile full = ballots({'p', 'r', 'p'});
  const BinaryProfile honest = restrict_to_genuine(full, electorate);
  const BinaryRule safe = [](const BinaryProfile& p) { return supermajority_rule(p, Delta(Rational(1, 6))); };
  const BinaryRule naive = [](const BinaryProfile& p) { return supermajority_rule(p, Delta()); };

  CHECK(check_safety_instance(safe, majority_base_rule, electorate, full, honest).holds);
  const AuditVerdict broken = check_safety_instance(naive, majority_base_rule, electorate, full, honest);
  CHECK_FALSE(broken.holds);
  REQUIRE(broken.witness.has_value());
  const auto& witness = std::get<BinaryWitness>(*broken.witness);
  CHECK(witness.rule_output.elects_only(kProposalIndex));
  CHECK(witness.base_output->elects_only(kRealityIndex));
  CHECK(safety_witness_reproduces(witness, fixed_rule(naive), majority_base_rule));

  const BinaryRule status_quo = [](const BinaryProfile&) { return DecisionOutcome{{kRealityIndex}, {}}; };
  CHECK(check_safety_instance(status_quo, majority_base_rule, electorate, full, honest).holds);
  CHECK_THROWS_AS(check_safety_instance(safe, majority_base_rule, electorate, full, full), std::invalid_argument);
}

TEST_CASE("binary universe size") {
  CHECK(safety_universe_size(BinaryUniverse{1, 3, PenetrationPlan::true_ratio()}) == 70);
  CHECK(safety_universe_size(BinaryUniverse{4, 4, PenetrationPlan::fixed(1)}) == 64);
}

TEST_CASE("penetration plans") {
  const auto at_most = PenetrationPlan::at_most(Rational(1, 4)).entries(8);
  REQUIRE(at_most.size() == 3);
  CHECK(at_most.back().sybils == 2);
  CHECK(at_most.back().configured.value() == Rational(1, 4));
  CHECK(PenetrationPlan::below(Rational(1, 4)).entries(8).size() == 2);
  CHECK(PenetrationPlan::true_ratio().entries(5).size() == 5);
  CHECK(PenetrationPlan::true_ratio().entries(5).back().configured.value() == Rational(4, 5));
  CHECK(PenetrationPlan::fixed(9).entries(5).empty());
  auto mismatch = PenetrationPlan::at_most(Rational(1, 2));
  mismatch.rule_sigma = Rational(1, 10);
  CHECK(mismatch.entries(4).back().configured.value() == Rational(1, 10));
}

TEST_CASE("half sigma supermajority is safe on small binary universes") {
  const AuditVerdict verdict = exhaustive_safety(half_sigma_rule(), majority_base_rule,
                                                 BinaryUniverse{1, 8, PenetrationPlan::true_ratio()});
  CHECK(verdict.holds);
  CHECK(verdict.universe_size == safety_universe_size(BinaryUniverse{1, 8, PenetrationPlan::true_ratio()}));
}

TEST_CASE("a rule audited against itself with no sybils holds") {
  const auto rule = fixed_rule<BinaryRule>(majority_base_rule);
  CHECK(exhaustive_safety(rule, majority_base_rule, BinaryUniverse{1, 1, PenetrationPlan::fixed(0)}).holds);
}

TEST_CASE("a smaller margin is refuted and the witness replays") {
  for (std::size_t n = 3; n <= 8; ++n) {
    for (std::size_t s = 2; s < n; ++s) {
      const Rational below = Rational(static_cast<std::int64_t>(s) - 1, 2 * static_cast<std::int64_t>(n));
      auto rule = supermajority_at([below](const SigmaBound&) { return Delta(below); });
      const AuditVerdict verdict =
          exhaustive_safety(rule, majority_base_rule, BinaryUniverse{n, n, PenetrationPlan::fixed(s)});
      CAPTURE(n);
      CAPTURE(s);
      // Counterexamples need n - s even.
      CHECK(verdict.holds == ((n - s) % 2 == 1));
      if (!verdict.holds) {
        const auto& witness = std::get<BinaryWitness>(*verdict.witness);
        CHECK(safety_witness_reproduces(witness, rule, majority_base_rule));
        CHECK(witness.instance.electorate.sybils().size() == s);
      }
    }
  }
}

TEST_CASE("reported witness does not depend on thread count") {
  auto rule = supermajority_at([](const SigmaBound&) { return Delta(); });
  const BinaryUniverse universe{2, 9, PenetrationPlan::true_ratio()};
  const AuditVerdict one = exhaustive_safety(rule, majority_base_rule, universe, threads(1));
  const AuditVerdict four = exhaustive_safety(rule, majority_base_rule, universe, threads(4));
  REQUIRE_FALSE(one.holds);
  REQUIRE_FALSE(four.holds);
  const auto& a = std::get<BinaryWitness>(*one.witness);
  const auto& b = std::get<BinaryWitness>(*four.witness);
  CHECK(a.instance.profile == b.instance.profile);
  CHECK(a.instance.electorate.sybils() == b.instance.electorate.sybils());
}

TEST_CASE("budget is enforced before enumeration") {
  AuditOptions options;
  options.budget = 100;
  try {
    exhaustive_safety(half_sigma_rule(), majority_base_rule, BinaryUniverse{1, 8, PenetrationPlan::true_ratio()},
                      options);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.budget() == 100);
    CHECK(e.required() > 100);
  }
}

TEST_CASE("binary liveness around one third") {
  for (const Rational& sigma : {Rational(1, 4), Rational(3, 10)}) {
    CHECK(check_liveness(half_sigma_rule(), BinaryUniverse{1, 12, PenetrationPlan::at_most(sigma)}).holds);
  }
  for (const Rational& sigma : {Rational(1, 3), Rational(2, 5)}) {
    const AuditVerdict verdict =
        check_liveness(half_sigma_rule(), BinaryUniverse{1, 12, PenetrationPlan::at_most(sigma)});
    CHECK_FALSE(verdict.holds);
    REQUIRE(verdict.witness.has_value());
    CHECK(liveness_witness_reproduces(std::get<BinaryWitness>(*verdict.witness), half_sigma_rule()));
  }
  const AuditVerdict third = check_liveness(half_sigma_rule(), BinaryUniverse{3, 3, PenetrationPlan::fixed(1)});
  CHECK_FALSE(third.holds);

  const auto status_quo = fixed_rule<BinaryRule>([](const BinaryProfile&) { return DecisionOutcome{{0}, {}}; });
  CHECK_FALSE(check_liveness(status_quo, BinaryUniverse{1, 3, PenetrationPlan::fixed(0)}).holds);
}

TEST_CASE("ordinal agenda is safe on a small universe") {
  OrdinalUniverse universe{3, 1, 4, PenetrationPlan::true_ratio()};
  const auto order = default_agenda_order(universe.alternative_set());
  CHECK(universe.alternative_set().names() == std::vector<std::string>{"r", "a", "b"});
  const AuditVerdict verdict = exhaustive_safety(
      agenda_rule(Variant::Conservative, ContestScope::AllAlternatives, order), kCondorcetBase, universe);
  CHECK(verdict.holds);
  CHECK(verdict.universe_size == safety_universe_size(universe));
}

TEST_CASE("viable-set contests are refuted by the ordinal audit") {
  OrdinalUniverse universe{3, 1, 4, PenetrationPlan::true_ratio()};
  const auto rule = criterion_rule(ContestScope::RealityViable);
  const AuditVerdict verdict = exhaustive_safety(rule, kCondorcetBase, universe);
  REQUIRE_FALSE(verdict.holds);
  const auto& witness = std::get<OrdinalWitness>(*verdict.witness);
  CHECK(safety_witness_reproduces(witness, rule, kCondorcetBase));
  CHECK_FALSE(witness.instance.electorate.sybils().empty());
}

TEST_CASE("ordinal liveness") {
  OrdinalUniverse universe{3, 1, 6, PenetrationPlan::at_most(Rational(3, 10))};
  const auto order = default_agenda_order(universe.alternative_set());
  const auto rule = agenda_rule(Variant::Conservative, ContestScope::AllAlternatives, order);
  CHECK(check_liveness(rule, universe).holds);
  OrdinalUniverse blocked{3, 3, 3, PenetrationPlan::fixed(1)};
  const AuditVerdict verdict = check_liveness(rule, blocked, AlternativeIndex{1});
  CHECK_FALSE(verdict.holds);
  CHECK(liveness_witness_reproduces(std::get<OrdinalWitness>(*verdict.witness), rule));
}

TEST_CASE("parameter safety and liveness") {
  ParameterUniverse universe;
  universe.max_n = 6;
  universe.penetration = PenetrationPlan::below(Rational(1, 4));
  CHECK(exhaustive_safety(suppress(), median_base_rule, universe).holds);

  AuditOptions every;
  every.search = LivenessSearch::EveryUnanimousTarget;
  universe.penetration = PenetrationPlan::at_most(Rational(3, 10));
  CHECK(check_liveness(suppress(), universe, std::nullopt, every).holds);
  CHECK(check_liveness(suppress(), universe).holds);

  universe.penetration = PenetrationPlan::at_most(Rational(2, 5));
  const AuditVerdict blocked = check_liveness(suppress(), universe, std::nullopt, every);
  CHECK_FALSE(blocked.holds);
  const auto& witness = std::get<ParameterWitness>(*blocked.witness);
  CHECK(witness.direction.has_value());
  CHECK(witness.target.has_value());
  CHECK(liveness_witness_reproduces(witness, suppress()));
}

TEST_CASE("parameter safety breaks when sybils exceed the configured bound") {
  ParameterUniverse universe;
  universe.max_n = 5;
  universe.penetration = PenetrationPlan::at_most(Rational(1, 2));
  universe.penetration.rule_sigma = Rational(0);
  const AuditVerdict verdict = exhaustive_safety(suppress(), median_base_rule, universe);
  REQUIRE_FALSE(verdict.holds);
  CHECK(safety_witness_reproduces(std::get<ParameterWitness>(*verdict.witness), suppress(), median_base_rule));
}

TEST_CASE("less conservative ordering") {
  ParameterUniverse universe;
  universe.max_n = 6;
  CHECK(less_conservative_check(suppress(), simple(), universe).holds);
  CHECK(less_conservative_check(simple(), simple(), universe).holds);
  const AuditVerdict reversed = less_conservative_check(simple(), suppress(), universe);
  REQUIRE_FALSE(reversed.holds);
  CHECK(less_conservative_witness_reproduces(std::get<ParameterWitness>(*reversed.witness), simple(), suppress()));

  RandomParameterSpec spec;
  spec.instances = 2000;
  spec.max_n = 31;
  CHECK(less_conservative_random(suppress(), simple(), spec).holds);
  CHECK_FALSE(less_conservative_random(simple(), suppress(), spec).holds);
}

TEST_CASE("rule outputs ignore genuine and sybil tags") {
  const ParameterProfile profile{Decimal(0), {1, 1, 4, 4, 4}};
  const auto rule = suppress()(SigmaBound(Rational(1, 5)));
  const std::vector<std::uint32_t> first{0};
  const std::vector<std::uint32_t> second{4};
  const auto a = check_safety_instance(rule, median_base_rule, Electorate::with_sybils(5, first), profile,
                                       restrict_to_genuine(profile, Electorate::with_sybils(5, first)));
  const auto b = check_safety_instance(rule, median_base_rule, Electorate::with_sybils(5, second), profile,
                                       restrict_to_genuine(profile, Electorate::with_sybils(5, second)));
  CHECK(a.holds);
  CHECK(b.holds);
  CHECK(rule(profile).value == rule(profile).value);
}
