#include <algorithm>
#include <limits>
#include <numeric>

#include "harness_internal.hpp"
#include "sybil/enumeration.hpp"

namespace sybil {

std::vector<Ranking> all_rankings(std::size_t alternatives) {
  Ranking ranking(alternatives);
  std::iota(ranking.begin(), ranking.end(), AlternativeIndex{0});
  std::vector<Ranking> out;
  do {
    out.push_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t multiset_count(std::uint64_t kinds, std::uint64_t size) {
  if (kinds == 0) {
    return size == 0 ? 1 : 0;
  }
  return binomial(kinds + size - 1, size);
}

std::vector<std::vector<std::uint8_t>> all_multisets(std::size_t kinds, std::size_t size) {
  std::vector<std::vector<std::uint8_t>> out;
  for_each_multiset(kinds, size, [&](std::span<const std::uint8_t> m) { out.emplace_back(m.begin(), m.end()); });
  return out;
}

namespace audit {

std::string_view to_string(Property property) {
  switch (property) {
    case Property::Safety: return "safety";
    case Property::Liveness: return "liveness";
    case Property::LessConservative: return "less-conservative";
  }
  return "unknown";
}

std::string_view to_string(Direction direction) {
  return direction == Direction::Up ? "up" : "down";
}

BudgetExceeded::BudgetExceeded(std::uint64_t required, std::uint64_t budget)
    : std::runtime_error("enumeration needs " + std::to_string(required) + " instances, budget is " +
                         std::to_string(budget)),
      required_(required),
      budget_(budget) {}

PenetrationPlan PenetrationPlan::true_ratio() {
  return PenetrationPlan{};
}

PenetrationPlan PenetrationPlan::at_most(Rational sigma) {
  PenetrationPlan plan;
  plan.kind = Kind::AtMost;
  plan.sigma = SigmaBound(sigma).value();
  return plan;
}

PenetrationPlan PenetrationPlan::below(Rational sigma) {
  PenetrationPlan plan;
  plan.kind = Kind::Below;
  plan.sigma = SigmaBound(sigma).value();
  return plan;
}

PenetrationPlan PenetrationPlan::fixed(std::size_t sybils) {
  PenetrationPlan plan;
  plan.kind = Kind::FixedCount;
  plan.count = sybils;
  return plan;
}

std::vector<PenetrationPlan::Entry> PenetrationPlan::entries(std::size_t n) const {
  std::vector<Entry> out;
  const auto total = static_cast<std::int64_t>(n);
  auto configured = [&](std::size_t s) {
    if (rule_sigma) return SigmaBound(*rule_sigma);
    if (kind == Kind::AtMost || kind == Kind::Below) return SigmaBound(sigma);
    return SigmaBound(Rational(static_cast<std::int64_t>(s), total));
  };
  for (std::size_t s = 0; s < n; ++s) {
    const Rational share(static_cast<std::int64_t>(s), total);
    bool include = false;
    switch (kind) {
      case Kind::TrueRatio: include = true; break;
      case Kind::AtMost: include = share <= sigma; break;
      case Kind::Below: include = share < sigma; break;
      case Kind::FixedCount: include = s == count; break;
    }
    if (include) {
      out.push_back({s, configured(s)});
    }
  }
  return out;
}

bool violates_less_conservative(const Decimal& r, const Decimal& a, const Decimal& b) {
  const bool upward = r <= b && b <= a;
  const bool downward = a <= b && b <= r;
  return !(upward || downward);
}

namespace detail {

void enforce_budget(std::uint64_t required, const AuditOptions& options) {
  if (required > options.budget) {
    throw BudgetExceeded(required, options.budget);
  }
}

std::vector<AgentId> agent_range(std::uint32_t begin, std::uint32_t end) {
  std::vector<AgentId> out;
  for (std::uint32_t i = begin; i < end; ++i) {
    out.push_back(AgentId{i});
  }
  return out;
}

Electorate genuine_then_sybils(std::size_t genuine, std::size_t sybils) {
  const auto h = static_cast<std::uint32_t>(genuine);
  const auto n = static_cast<std::uint32_t>(genuine + sybils);
  return Electorate(agent_range(0, h), agent_range(h, n));
}

bool outcome_subset(const DecisionOutcome& rule, const DecisionOutcome& base) {
  return std::includes(base.winners.begin(), base.winners.end(), rule.winners.begin(), rule.winners.end());
}

}  // namespace detail
}  // namespace audit
}  // namespace sybil
