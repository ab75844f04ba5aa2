#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stged/diff/tensor.hpp"

namespace stged {
class Rng;
}

namespace stged::diff {

struct Parameter {
  Parameter(std::string name, Tensor value);

  std::string name;
  Tensor value;
  Tensor grad;  // same shape as value

  void zero_grad() { grad.fill(0.0); }
};

/// Ordered collection of uniquely named parameters with stable addresses.
class ParameterStore {
public:
  ParameterStore() = default;
  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;
  ParameterStore(ParameterStore&&) = default;
  ParameterStore& operator=(ParameterStore&&) = default;

  Parameter& add(std::string name, Tensor value);
  /// Adds a rows x cols parameter drawn uniform in +-sqrt(6 / (fan_in + fan_out)).
  Parameter& add_glorot(std::string name, std::size_t rows, std::size_t cols, Rng& rng);
  Parameter& add_zeros(std::string name, std::size_t rows, std::size_t cols);

  Parameter& get(const std::string& name);
  const Parameter& get(const std::string& name) const;
  Parameter* find(const std::string& name);

  std::size_t size() const noexcept { return params_.size(); }
  std::size_t scalar_count() const;

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.cbegin(); }
  auto end() const { return params_.cend(); }

  void zero_grad();

  /// Snapshot / restore of all values, in store order.
  std::vector<Tensor> values() const;
  void assign(const std::vector<Tensor>& values);

private:
  std::vector<std::unique_ptr<Parameter>> params_;
};

}  // namespace stged::diff
