#include "sybil/parameter_rules.hpp"

#include <algorithm>
#include <stdexcept>

namespace sybil {
namespace {

void require_votes(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("empty profile");
  }
}

Decimal sorted_median(std::vector<Decimal> values, const Decimal& r) {
  if (values.size() % 2 == 0) {
    values.push_back(r);
  }
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

}  // namespace

Decimal reality_aware_median(std::span<const Decimal> values, const Decimal& r) {
  require_votes(values.size());
  return sorted_median(std::vector<Decimal>(values.begin(), values.end()), r);
}

bool MedianBand::spans(const Decimal& x) const {
  return upward() ? (current <= x && x <= median) : (median <= x && x <= current);
}

MedianBand median_base_rule(const ParameterProfile& profile) {
  MedianBand band;
  band.current = profile.current;
  band.median = reality_aware_median(profile.ideal_points, profile.current);
  for (const auto& v : profile.ideal_points) {
    if (band.spans(v)) {
      band.members.push_back(v);
    }
  }
  std::sort(band.members.begin(), band.members.end());
  return band;
}

SuppressedSets suppressed_sets(std::span<const Decimal> values, const SigmaBound& sigma) {
  require_votes(values.size());
  const auto n = static_cast<std::int64_t>(values.size());
  const auto removed = floor_times(sigma.value(), n);
  if (removed >= n) {
    throw std::invalid_argument("suppression removes all votes");
  }
  std::vector<Decimal> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SuppressedSets out;
  out.removed_count = static_cast<std::size_t>(removed);
  out.top_removed.assign(sorted.begin(), sorted.end() - removed);
  out.bottom_removed.assign(sorted.begin() + removed, sorted.end());
  return out;
}

ParameterDecision simple_update(const ParameterProfile& profile, const SigmaBound& sigma) {
  require_votes(profile.size());
  const Decimal& r = profile.current;
  const Delta delta(sigma.value() / 2);
  const auto total = static_cast<Count>(profile.size());

  ParameterDecision out;
  out.value = r;
  std::optional<Decimal> nearest_above;
  std::optional<Decimal> nearest_below;
  for (const auto& v : profile.ideal_points) {
    if (v > r) {
      ++out.above;
      if (!nearest_above || v < *nearest_above) nearest_above = v;
    } else if (v < r) {
      ++out.below;
      if (!nearest_below || v > *nearest_below) nearest_below = v;
    }
  }
  if (strict_supermajority(out.above, total, delta)) {
    out.value = *nearest_above;
    out.branch = UpdateBranch::Up;
  } else if (strict_supermajority(out.below, total, delta)) {
    out.value = *nearest_below;
    out.branch = UpdateBranch::Down;
  }
  return out;
}

ParameterDecision suppress_outer_sigma(const ParameterProfile& profile, const SigmaBound& sigma) {
  const Decimal& r = profile.current;
  SuppressedSets trimmed = suppressed_sets(profile.ideal_points, sigma);
  const Decimal median = reality_aware_median(profile.ideal_points, r);
  const Decimal high = sorted_median(std::move(trimmed.top_removed), r);
  const Decimal low = sorted_median(std::move(trimmed.bottom_removed), r);

  ParameterDecision out;
  out.value = r;
  out.median = median;
  out.top_removed_median = high;
  out.bottom_removed_median = low;
  if (r < high && high <= median) {
    out.value = high;
    out.branch = UpdateBranch::Up;
  } else if (median <= low && low < r) {
    out.value = low;
    out.branch = UpdateBranch::Down;
  }
  return out;
}

std::string_view to_string(UpdateBranch branch) {
  switch (branch) {
    case UpdateBranch::Keep: return "keep";
    case UpdateBranch::Up: return "up";
    case UpdateBranch::Down: return "down";
  }
  return "unknown";
}

}  // namespace sybil
