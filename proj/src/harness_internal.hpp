#pragma once

#include "sybil/harness.hpp"

namespace sybil::audit::detail {

void enforce_budget(std::uint64_t required, const AuditOptions& options);
std::vector<AgentId> agent_range(std::uint32_t begin, std::uint32_t end);
/// Agents 0..genuine-1 genuine, the rest sybils.
Electorate genuine_then_sybils(std::size_t genuine, std::size_t sybils);
/// rule.winners ⊆ base.winners.
bool outcome_subset(const DecisionOutcome& rule, const DecisionOutcome& base);

}  // namespace sybil::audit::detail
