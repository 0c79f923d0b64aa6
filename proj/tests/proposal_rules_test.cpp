#include <doctest.h>

#include "oracles.hpp"
#include "sybil/proposal_rules.hpp"

using namespace sybil;

namespace {

BinaryProfile votes(int proposal, int reality) {
  BinaryProfile out;
  out.votes.insert(out.votes.end(), static_cast<std::size_t>(proposal), Ballot::Proposal);
  out.votes.insert(out.votes.end(), static_cast<std::size_t>(reality), Ballot::Reality);
  return out;
}

}  // namespace

TEST_CASE("supermajority rule examples") {
  CHECK(supermajority_rule(votes(7, 3), Delta(Rational(3, 20))).elects_only(kProposalIndex));
  CHECK(supermajority_rule(votes(5, 5), Delta(Rational(0))).elects_only(kRealityIndex));
  CHECK(supermajority_rule(votes(12, 0), Delta(Rational(1, 6))).elects_only(kProposalIndex));
  CHECK(supermajority_rule(votes(11, 1), Delta(Rational(1, 6))).elects_only(kProposalIndex));
  CHECK(supermajority_rule(votes(8, 4), Delta(Rational(1, 6))).elects_only(kRealityIndex));
  CHECK_THROWS_WITH_AS(supermajority_rule(BinaryProfile{}, Delta()), "empty profile", std::invalid_argument);
}

TEST_CASE("supermajority trace records the single contest") {
  const DecisionOutcome outcome = supermajority_rule(votes(8, 4), Delta(Rational(1, 6)));
  REQUIRE(outcome.trace.size() == 1);
  const Contest& c = outcome.trace.front();
  CHECK(c.kind == ContestKind::Proposal);
  CHECK(c.challenger == kProposalIndex);
  CHECK(c.incumbent == kRealityIndex);
  CHECK(c.support == 8);
  CHECK(c.total == 12);
  CHECK_FALSE(c.passed);
  CHECK(c.at_threshold);
}

TEST_CASE("majority base rule") {
  CHECK(majority_base_rule(votes(2, 1)).elects_only(kProposalIndex));
  CHECK(majority_base_rule(votes(2, 2)).elects_only(kRealityIndex));
  CHECK(majority_base_rule(votes(1, 0)).elects_only(kProposalIndex));
  CHECK(majority_base_rule(votes(0, 1)).elects_only(kRealityIndex));
}

TEST_CASE("supermajority agrees with the exact oracle") {
  for (int n = 1; n <= 30; ++n) {
    for (int p = 0; p <= n; ++p) {
      for (const Rational& d : {Rational(0), Rational(1, 20), Rational(1, 10), Rational(1, 6), Rational(1, 4),
                                Rational(1, 2)}) {
        const bool expected = oracle::strictly_above(p, n, d);
        CHECK(supermajority_rule(votes(p, n - p), Delta(d)).elects_only(expected ? kProposalIndex : kRealityIndex));
      }
    }
  }
}

TEST_CASE("min safe delta") {
  CHECK(min_safe_delta(SigmaBound(Rational(0))).value() == Rational(0));
  CHECK(min_safe_delta(SigmaBound(Rational(1, 3))).value() == Rational(1, 6));
  CHECK(min_safe_delta(SigmaBound(Rational(1, 10))).value() == Rational(1, 20));
}

TEST_CASE("conservatism rate examples") {
  const auto none = conservatism(SigmaBound(Rational(0)), Delta(Rational(0)));
  CHECK(none.rho == Rational(0));
  CHECK_FALSE(none.unachievable);

  const auto third = conservatism(SigmaBound(Rational(1, 3)), Delta(Rational(1, 6)));
  CHECK(third.rho == Rational(1, 2));
  CHECK(third.unachievable);

  const auto tenth = conservatism(SigmaBound(Rational(1, 10)), Delta(Rational(1, 20)));
  CHECK(tenth.rho == Rational(1, 9));
  CHECK(tenth.genuine_share_required() == Rational(11, 18));
  CHECK(tenth.genuine_share_required() < Rational(612, 1000));
  CHECK_FALSE(tenth.unachievable);

  CHECK_THROWS_AS(conservatism(SigmaBound(Rational(1)), Delta()), std::domain_error);
}

TEST_CASE("conservatism at half sigma is sigma over one minus sigma") {
  for (std::int64_t q = 1; q <= 40; ++q) {
    for (std::int64_t p = 0; p < q; ++p) {
      const SigmaBound sigma(Rational(p, q));
      const auto point = conservatism(sigma, min_safe_delta(sigma));
      CHECK(point.rho == sigma.value() / (Rational(1) - sigma.value()));
      CHECK(point.unachievable == (Rational(1, 3) <= sigma.value()));
    }
  }
}

TEST_CASE("conservatism equals the oracle formula") {
  for (std::int64_t q = 1; q <= 20; ++q) {
    for (std::int64_t p = 0; p < q; ++p) {
      for (std::int64_t dp = 0; dp <= 10; ++dp) {
        const Rational sigma(p, q);
        const Rational delta(dp, 20);
        const oracle::Big expected = (oracle::threshold(delta)) / (1 - oracle::big(sigma)) - oracle::Big(1) / 2;
        CHECK(oracle::big(conservatism(SigmaBound(sigma), Delta(delta)).rho) == expected);
      }
    }
  }
}
