#include "stged/train/balance.hpp"

#include "stged/core/errors.hpp"

namespace stged::train {

std::vector<LabeledPair> labeled_pairs(const tcn::ConnectivityMatrix& labels, std::size_t window) {
  std::vector<LabeledPair> out;
  const std::size_t n = labels.size();
  out.reserve(n * (n > 0 ? n - 1 : 0));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j) out.push_back({window, {i, j}, labels(i, j)});
  return out;
}

std::vector<LabeledPair> balance(std::span<const LabeledPair> pairs, Rng& rng) {
  std::vector<LabeledPair> pos, neg;
  for (const auto& p : pairs) (p.label ? pos : neg).push_back(p);
  if (pos.empty()) throw DomainError("balance: no positive pairs");
  if (neg.empty()) throw DomainError("balance: no negative pairs");
  auto& small = pos.size() <= neg.size() ? pos : neg;
  auto& large = pos.size() <= neg.size() ? neg : pos;
  // Partial Fisher-Yates: the first |small| entries become a uniform sample.
  for (std::size_t k = 0; k < small.size(); ++k) std::swap(large[k], large[k + rng.index(large.size() - k)]);
  std::vector<LabeledPair> out(small.begin(), small.end());
  out.insert(out.end(), large.begin(), large.begin() + static_cast<std::ptrdiff_t>(small.size()));
  rng.shuffle(std::span<LabeledPair>(out));
  return out;
}

}  // namespace stged::train
