#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sybil/core.hpp"

using namespace sybil;

TEST_CASE("strict supermajority examples") {
  CHECK(strict_supermajority(7, 10, Delta(Rational(3, 20))));
  CHECK_FALSE(strict_supermajority(5, 10, Delta(Rational(0))));
  CHECK(strict_supermajority(13, 19, Delta(Rational(1, 6))));
  CHECK_FALSE(strict_supermajority(2, 3, Delta(Rational(1, 6))));
}

TEST_CASE("threshold helpers reject bad counts") {
  CHECK_THROWS_WITH_AS(strict_supermajority(0, 0, Delta()), "empty electorate", std::invalid_argument);
  CHECK_THROWS_AS(strict_supermajority(4, 3, Delta()), std::invalid_argument);
  CHECK_THROWS_AS(strict_supermajority(-1, 3, Delta()), std::invalid_argument);
  CHECK_THROWS_AS(Delta(Rational(3, 5)), std::invalid_argument);
  CHECK_THROWS_AS(Delta(Rational(-1, 5)), std::invalid_argument);
  CHECK_THROWS_AS(SigmaBound(Rational(6, 5)), std::invalid_argument);
}

TEST_CASE("strict supermajority matches arbitrary-precision comparison") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> totals(1, 1'000'000'000);
  std::uniform_int_distribution<std::int64_t> denominators(1, 1'000'000'000);
  for (int i = 0; i < 50000; ++i) {
    const std::int64_t total = totals(rng);
    const std::int64_t q = denominators(rng);
    const std::int64_t p = std::uniform_int_distribution<std::int64_t>(0, q / 2)(rng);
    const Delta delta(Rational(p, q));
    // Land near the threshold half the time.
    std::int64_t count = std::uniform_int_distribution<std::int64_t>(0, total)(rng);
    if (i % 2 == 0) {
      const auto near = static_cast<std::int64_t>(static_cast<double>(total) * (0.5 + static_cast<double>(p) / q));
      count = std::clamp<std::int64_t>(near + (i % 7) - 3, 0, total);
    }
    CAPTURE(count);
    CAPTURE(total);
    CHECK(strict_supermajority(count, total, delta) == oracle::strictly_above(count, total, delta.value()));
    CHECK(reaches_fraction(count, total, delta) == oracle::at_least(count, total, delta.value()));
    CHECK(exactly_at_threshold(count, total, delta) ==
          (oracle::Big(count) / oracle::Big(total) == oracle::threshold(delta.value())));
  }
}

TEST_CASE("strict supermajority is monotone in support") {
  for (std::int64_t total = 1; total <= 40; ++total) {
    for (std::int64_t q = 1; q <= 12; ++q) {
      for (std::int64_t p = 0; 2 * p <= q; ++p) {
        const Delta delta(Rational(p, q));
        bool seen_true = false;
        for (std::int64_t count = 0; count <= total; ++count) {
          const bool now = strict_supermajority(count, total, delta);
          CHECK_FALSE((seen_true && !now));
          seen_true = seen_true || now;
        }
      }
    }
  }
}

TEST_CASE("delta one half is never strictly exceeded") {
  // count/total > 1 cannot hold; unanimity sits exactly at the threshold.
  for (std::int64_t total = 1; total <= 30; ++total) {
    for (std::int64_t count = 0; count <= total; ++count) {
      CHECK_FALSE(strict_supermajority(count, total, Delta(Rational(1, 2))));
      CHECK(exactly_at_threshold(count, total, Delta(Rational(1, 2))) == (count == total));
    }
  }
}

TEST_CASE("sybil fraction") {
  auto ids = [](std::initializer_list<std::uint32_t> v) {
    std::vector<AgentId> out;
    for (auto i : v) out.push_back(AgentId{i});
    return out;
  };
  CHECK(sybil_fraction(Electorate(ids({0, 1}), ids({2}))).value() == Rational(1, 3));
  CHECK(sybil_fraction(Electorate(ids({0, 1, 2, 3, 4, 5, 6, 7, 8}), ids({9}))).value() == Rational(1, 10));
  CHECK(sybil_fraction(Electorate(ids({0, 1, 2, 3, 4}), {})).value() == Rational(0));
  CHECK_THROWS_AS(Electorate(ids({0, 1}), ids({1})), std::invalid_argument);
  CHECK_THROWS_AS(Electorate(ids({0, 2}), {}), std::invalid_argument);
  CHECK_THROWS_AS(Electorate({}, {}), std::invalid_argument);
}

TEST_CASE("restriction keeps genuine ballots in id order") {
  const std::vector<std::uint32_t> sybils{1, 3};
  const Electorate electorate = Electorate::with_sybils(5, sybils);
  CHECK(electorate.is_sybil(AgentId{3}));
  CHECK_FALSE(electorate.is_sybil(AgentId{0}));
  const BinaryProfile full{{Ballot::Proposal, Ballot::Reality, Ballot::Reality, Ballot::Proposal, Ballot::Reality}};
  const BinaryProfile honest = restrict_to_genuine(full, electorate);
  CHECK(honest.votes == std::vector<Ballot>{Ballot::Proposal, Ballot::Reality, Ballot::Reality});

  const ParameterProfile values{Decimal(1), {Decimal(5), Decimal(6), Decimal(7), Decimal(8), Decimal(9)}};
  CHECK(restrict_to_genuine(values, electorate).ideal_points == std::vector<Decimal>{5, 7, 9});
  CHECK_THROWS_AS(restrict_to_genuine(BinaryProfile{{Ballot::Proposal}}, electorate), std::invalid_argument);
}

TEST_CASE("ordinal profiles validate rankings") {
  const AlternativeSet alternatives({"r", "a", "b"}, "r");
  CHECK(alternatives.index_of("b") == 2);
  CHECK(alternatives.reality() == 0);
  CHECK_THROWS_AS(alternatives.index_of("z"), std::invalid_argument);
  CHECK_THROWS_AS(AlternativeSet({"r", "a", "a"}, "r"), std::invalid_argument);
  CHECK_THROWS_AS(AlternativeSet({"a", "b"}, "r"), std::invalid_argument);
  CHECK_NOTHROW(OrdinalProfile(alternatives, {{1, 0, 2}}));
  CHECK_THROWS_AS(OrdinalProfile(alternatives, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(OrdinalProfile(alternatives, {{1, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(OrdinalProfile(alternatives, {{1, 0, 3}}), std::invalid_argument);
}
