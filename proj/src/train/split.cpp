#include "stged/train/split.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <string>

#include "stged/core/errors.hpp"
#include "stged/core/rng.hpp"

namespace stged::train {

Split split_windows(std::size_t count, const SplitConfig& config) {
  const auto& r = config.ratios;
  if (r.train + r.val + r.test != 100)
    throw ConfigError("split ratios " + std::to_string(r.train) + ":" + std::to_string(r.val) + ":" +
                      std::to_string(r.test) + " do not sum to 100");
  if (count < kMinSplitWindows)
    throw DomainError("split needs at least " + std::to_string(kMinSplitWindows) + " windows, got " +
                      std::to_string(count));
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(config.seed);
  rng.shuffle(std::span<std::size_t>(order));

  const std::size_t n_val = count * r.val / 100;
  const std::size_t n_test = count * r.test / 100;
  Split s;
  s.val.assign(order.begin(), order.begin() + n_val);
  s.test.assign(order.begin() + n_val, order.begin() + n_val + n_test);
  s.train.assign(order.begin() + n_val + n_test, order.end());
  for (auto* part : {&s.train, &s.val, &s.test}) std::sort(part->begin(), part->end());
  return s;
}

}  // namespace stged::train
