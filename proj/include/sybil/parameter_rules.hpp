#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sybil/core.hpp"

namespace sybil {

/// Median of the values when their count is odd, median of values ∪ {r}
/// otherwise. Always returns r or one of the values.
Decimal reality_aware_median(std::span<const Decimal> values, const Decimal& r);

/// Votes between r and the reality-aware median, inclusive.
struct MedianBand {
  Decimal current;
  Decimal median;
  std::vector<Decimal> members;  // sorted vote values in the closed band

  /// r <= median (band extends upward, or is the single point r).
  bool upward() const { return current <= median; }
  /// x lies between r and the median inclusive.
  bool spans(const Decimal& x) const;
};

MedianBand median_base_rule(const ParameterProfile& profile);

struct SuppressedSets {
  std::vector<Decimal> top_removed;     // sorted, largest ⌊σn⌋ dropped
  std::vector<Decimal> bottom_removed;  // sorted, smallest ⌊σn⌋ dropped
  std::size_t removed_count = 0;
};

/// Drops exactly ⌊σn⌋ votes from the respective end (by count, so equal
/// values are removed one at a time).
SuppressedSets suppressed_sets(std::span<const Decimal> values, const SigmaBound& sigma);

enum class UpdateBranch { Keep, Up, Down };

struct ParameterDecision {
  Decimal value;
  UpdateBranch branch = UpdateBranch::Keep;
  /// Quantities the rule looked at, for the trace.
  std::optional<Decimal> median;
  std::optional<Decimal> top_removed_median;
  std::optional<Decimal> bottom_removed_median;
  Count above = 0;
  Count below = 0;
};

/// Smallest ideal point above r if a sigma/2-supermajority is above r, the
/// largest one below r if a sigma/2-supermajority is below, else r.
ParameterDecision simple_update(const ParameterProfile& profile, const SigmaBound& sigma);

/// With m the reality-aware median, hi the median after dropping the top
/// votes and lo after dropping the bottom ones: moves to hi when
/// r < hi <= m, to lo when m <= lo < r, and keeps r otherwise.
ParameterDecision suppress_outer_sigma(const ParameterProfile& profile, const SigmaBound& sigma);

std::string_view to_string(UpdateBranch branch);

}  // namespace sybil
