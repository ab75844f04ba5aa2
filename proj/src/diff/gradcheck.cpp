#include "stged/diff/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stged/core/errors.hpp"

namespace stged::diff {
namespace {

double evaluate(const ScalarFunction& f) {
  Tape tape;
  Var out = f(tape);
  if (out.value().size() != 1) throw ContractError("grad_check: function output is not scalar");
  return out.value()[0];
}

std::vector<std::size_t> entries_to_check(std::size_t size, std::size_t limit) {
  std::vector<std::size_t> idx;
  if (limit == 0 || size <= limit) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    return idx;
  }
  for (std::size_t k = 0; k < limit; ++k) idx.push_back(k * (size - 1) / (limit - 1));
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

GradCheckResult grad_check(const ScalarFunction& f, ParameterStore& params, double eps,
                           std::size_t max_entries_per_parameter) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw ContractError("grad_check: eps must lie in (0, 1e-3]");

  std::vector<Tensor> saved_grads;
  for (auto& p : params) saved_grads.push_back(p->grad);
  params.zero_grad();
  {
    Tape tape;
    Var out = f(tape);
    if (!std::isfinite(out.value()[0])) throw NumericError("grad_check: non-finite function value at base point");
    tape.backward(out);
  }

  GradCheckResult result;
  for (auto& p : params) {
    Tensor& value = p->value;
    for (std::size_t i : entries_to_check(value.size(), max_entries_per_parameter)) {
      const double original = value[i];
      const std::string where = "grad_check: non-finite function value perturbing '" + p->name + "'[" +
                                std::to_string(i) + "]";
      double up = 0.0, down = 0.0;
      try {
        value[i] = original + eps;
        up = evaluate(f);
        value[i] = original - eps;
        down = evaluate(f);
      } catch (const NumericError& e) {
        value[i] = original;
        throw NumericError(where + " (" + e.what() + ")");
      }
      value[i] = original;
      if (!std::isfinite(up) || !std::isfinite(down)) throw NumericError(where);
      const double numeric = (up - down) / (2.0 * eps);
      const double analytic = p->grad[i];
      const double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
      ++result.entries_checked;
      if (result.worst_parameter.empty() || err > result.max_error) {
        result.max_error = err;
        result.worst_parameter = p->name;
        result.worst_index = i;
      }
    }
  }

  std::size_t k = 0;
  for (auto& p : params) p->grad = saved_grads[k++];
  return result;
}

}  // namespace stged::diff
