#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stged::train {

/// Percentages of windows for training, validation and testing.
struct SplitRatios {
  unsigned train = 90;
  unsigned val = 5;
  unsigned test = 5;
};

struct SplitConfig {
  SplitRatios ratios;
  std::uint64_t seed = 1;
};

inline constexpr std::size_t kMinSplitWindows = 20;

/// Window positions per subset, each sorted ascending.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

/// Random window-level split. Validation and test get floor(count * ratio /
/// 100) windows, training gets the rest. Throws ConfigError if the ratios do
/// not sum to 100 and DomainError for fewer than kMinSplitWindows windows.
Split split_windows(std::size_t count, const SplitConfig& config);

}  // namespace stged::train
