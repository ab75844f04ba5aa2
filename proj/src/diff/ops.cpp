#include "stged/diff/ops.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stged/core/errors.hpp"

namespace stged::diff {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapC = Eigen::Map<const RowMatrix>;
using Map = Eigen::Map<RowMatrix>;

MapC view(const Tensor& t) { return MapC(t.data().data(), t.rows(), t.cols()); }
Map view(Tensor& t) { return Map(t.data().data(), t.rows(), t.cols()); }

void require_rank2(const char* op, const Tensor& t) {
  if (t.rank() != 2) throw ContractError(std::string(op) + ": operand must be rank 2, got " + shape_string(t.shape()));
}

[[noreturn]] void mismatch(const char* op, const Tensor& a, const Tensor& b) {
  throw ContractError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                      shape_string(b.shape()));
}

void same_tape(const char* op, Var a, Var b) {
  if (!a.valid() || !b.valid() || &a.tape() != &b.tape())
    throw ContractError(std::string(op) + ": operands on different tapes");
}

void check_index(const char* op, const Index& index, std::size_t bound) {
  for (auto i : index)
    if (i >= bound)
      throw ContractError(std::string(op) + ": index " + std::to_string(i) + " out of range " + std::to_string(bound));
}

// Below this many rows the blocked product spends most of its time packing
// the right operand; row-wise axpy over contiguous rows is faster.
constexpr std::size_t kSmallRows = 8;

/// y = x w, computed as y.row(r) = sum_k x(r, k) w.row(k).
void small_product(const Tensor& x, const Tensor& w, Tensor& y) {
  auto wv = view(w);
  auto yv = view(y);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t k = 0; k < x.cols(); ++k) yv.row(r) += x.at(r, k) * wv.row(k);
}

/// gw += x^T g, accumulated one row of gw at a time.
void small_outer_accumulate(const Tensor& x, const Tensor& g, Tensor& gw) {
  auto gv = view(g);
  auto out = view(gw);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t k = 0; k < x.cols(); ++k) out.row(k) += x.at(r, k) * gv.row(r);
}

}  // namespace

Var matmul(Var a, Var b) {
  same_tape("matmul", a, b);
  const Tensor& x = a.value();
  const Tensor& w = b.value();
  require_rank2("matmul", x);
  require_rank2("matmul", w);
  if (x.cols() != w.rows()) mismatch("matmul", x, w);
  Tensor y = Tensor::matrix(x.rows(), w.cols());
  if (x.rows() <= kSmallRows)
    small_product(x, w, y);
  else
    view(y).noalias() = view(x) * view(w);
  const auto ia = a.id(), ib = b.id();
  return a.tape().record("matmul", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    const Tensor& xa = t.value(ia);
    const Tensor& wb = t.value(ib);
    const bool small = g.rows() <= kSmallRows;
    if (t.requires_grad(ia)) {
      if (small)
        view(t.grad_slot(ia)).noalias() += (view(g).lazyProduct(view(wb).transpose()));
      else
        view(t.grad_slot(ia)).noalias() += view(g) * view(wb).transpose();
    }
    if (t.requires_grad(ib)) {
      if (small)
        small_outer_accumulate(xa, g, t.grad_slot(ib));
      else
        view(t.grad_slot(ib)).noalias() += view(xa).transpose() * view(g);
    }
  });
}

Var add(Var a, Var b) {
  same_tape("add", a, b);
  const Tensor& x = a.value();
  const Tensor& z = b.value();
  require_rank2("add", x);
  if (x.shape() != z.shape()) mismatch("add", x, z);
  Tensor y = x;
  y.accumulate(z);
  const auto ia = a.id(), ib = b.id();
  return a.tape().record("add", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) t.grad_slot(ia).accumulate(g);
    if (t.requires_grad(ib)) t.grad_slot(ib).accumulate(g);
  });
}

Var sub(Var a, Var b) {
  same_tape("sub", a, b);
  const Tensor& x = a.value();
  const Tensor& z = b.value();
  require_rank2("sub", x);
  if (x.shape() != z.shape()) mismatch("sub", x, z);
  Tensor y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= z[i];
  const auto ia = a.id(), ib = b.id();
  return a.tape().record("sub", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) t.grad_slot(ia).accumulate(g);
    if (t.requires_grad(ib)) {
      Tensor& gb = t.grad_slot(ib);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
    }
  });
}

Var mul(Var a, Var b) {
  same_tape("mul", a, b);
  const Tensor& x = a.value();
  const Tensor& z = b.value();
  require_rank2("mul", x);
  if (x.shape() != z.shape()) mismatch("mul", x, z);
  Tensor y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= z[i];
  const auto ia = a.id(), ib = b.id();
  return a.tape().record("mul", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) {
      Tensor& ga = t.grad_slot(ia);
      const Tensor& zb = t.value(ib);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * zb[i];
    }
    if (t.requires_grad(ib)) {
      Tensor& gb = t.grad_slot(ib);
      const Tensor& xa = t.value(ia);
      for (std::size_t i = 0; i < g.size(); ++i) gb[i] += g[i] * xa[i];
    }
  });
}

Var add_row(Var a, Var row) {
  same_tape("add_row", a, row);
  const Tensor& x = a.value();
  const Tensor& r = row.value();
  require_rank2("add_row", x);
  require_rank2("add_row", r);
  if (r.rows() != 1 || r.cols() != x.cols()) mismatch("add_row", x, r);
  Tensor y = x;
  view(y).rowwise() += view(r).row(0);
  const auto ia = a.id(), ib = row.id();
  return a.tape().record("add_row", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) t.grad_slot(ia).accumulate(g);
    if (t.requires_grad(ib)) view(t.grad_slot(ib)).row(0) += view(g).colwise().sum();
  });
}

Var mul_row(Var a, Var row) {
  same_tape("mul_row", a, row);
  const Tensor& x = a.value();
  const Tensor& r = row.value();
  require_rank2("mul_row", x);
  require_rank2("mul_row", r);
  if (r.rows() != 1 || r.cols() != x.cols()) mismatch("mul_row", x, r);
  Tensor y = x;
  view(y).array().rowwise() *= view(r).row(0).array();
  const auto ia = a.id(), ib = row.id();
  return a.tape().record("mul_row", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) {
      view(t.grad_slot(ia)).array() += view(g).array().rowwise() * view(t.value(ib)).row(0).array();
    }
    if (t.requires_grad(ib)) {
      view(t.grad_slot(ib)).row(0).array() += (view(g).array() * view(t.value(ia)).array()).colwise().sum();
    }
  });
}

Var scale_rows(Var a, Var s) {
  same_tape("scale_rows", a, s);
  const Tensor& x = a.value();
  const Tensor& c = s.value();
  require_rank2("scale_rows", x);
  require_rank2("scale_rows", c);
  if (c.cols() != 1 || c.rows() != x.rows()) mismatch("scale_rows", x, c);
  Tensor y = x;
  view(y).array().colwise() *= view(c).col(0).array();
  const auto ia = a.id(), ib = s.id();
  return a.tape().record("scale_rows", std::move(y), {ia, ib}, [ia, ib](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    if (t.requires_grad(ia)) {
      view(t.grad_slot(ia)).array() += view(g).array().colwise() * view(t.value(ib)).col(0).array();
    }
    if (t.requires_grad(ib)) {
      view(t.grad_slot(ib)).col(0).array() += (view(g).array() * view(t.value(ia)).array()).rowwise().sum();
    }
  });
}

Var scale(Var a, double factor) { return affine(a, factor, 0.0); }

Var affine(Var a, double factor, double offset) {
  const Tensor& x = a.value();
  require_rank2("affine", x);
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = factor * x[i] + offset;
  const auto ia = a.id();
  return a.tape().record("affine", std::move(y), {ia}, [ia, factor](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += factor * g[i];
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat_cols: no operands");
  const std::size_t rows = parts[0].value().rows();
  std::size_t cols = 0;
  std::vector<std::size_t> ids;
  for (const Var& p : parts) {
    same_tape("concat_cols", parts[0], p);
    require_rank2("concat_cols", p.value());
    if (p.rows() != rows) mismatch("concat_cols", parts[0].value(), p.value());
    cols += p.cols();
    ids.push_back(p.id());
  }
  Tensor y = Tensor::matrix(rows, cols);
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const Var& p : parts) {
    view(y).middleCols(off, p.cols()) = view(p.value());
    offsets.push_back(off);
    off += p.cols();
  }
  return parts[0].tape().record("concat_cols", std::move(y), ids, [ids, offsets](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!t.requires_grad(ids[k])) continue;
      Tensor& gk = t.grad_slot(ids[k]);
      view(gk) += view(g).middleCols(offsets[k], gk.cols());
    }
  });
}

Var concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw ContractError("concat_rows: no operands");
  const std::size_t cols = parts[0].value().cols();
  std::size_t rows = 0;
  std::vector<std::size_t> ids;
  for (const Var& p : parts) {
    same_tape("concat_rows", parts[0], p);
    require_rank2("concat_rows", p.value());
    if (p.cols() != cols) mismatch("concat_rows", parts[0].value(), p.value());
    rows += p.rows();
    ids.push_back(p.id());
  }
  std::vector<double> values;
  values.reserve(rows * cols);
  std::vector<std::size_t> offsets;
  for (const Var& p : parts) {
    offsets.push_back(values.size());
    const auto& v = p.value().values();
    values.insert(values.end(), v.begin(), v.end());
  }
  Tensor y({rows, cols}, std::move(values));
  return parts[0].tape().record("concat_rows", std::move(y), ids, [ids, offsets](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!t.requires_grad(ids[k])) continue;
      Tensor& gk = t.grad_slot(ids[k]);
      for (std::size_t i = 0; i < gk.size(); ++i) gk[i] += g[offsets[k] + i];
    }
  });
}

Var sigmoid(Var a) {
  const Tensor& x = a.value();
  require_rank2("sigmoid", x);
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x[i];
    // Branches keep exp() from overflowing for large |v|.
    y[i] = v >= 0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
  }
  const auto ia = a.id();
  return a.tape().record("sigmoid", std::move(y), {ia}, [ia](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    const Tensor& s = t.value(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * s[i] * (1.0 - s[i]);
  });
}

Var tanh(Var a) {
  const Tensor& x = a.value();
  require_rank2("tanh", x);
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
  const auto ia = a.id();
  return a.tape().record("tanh", std::move(y), {ia}, [ia](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    const Tensor& s = t.value(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (1.0 - s[i] * s[i]);
  });
}

Var leaky_relu(Var a, double slope) {
  const Tensor& x = a.value();
  require_rank2("leaky_relu", x);
  Tensor y(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] > 0 ? x[i] : slope * x[i];
  const auto ia = a.id();
  return a.tape().record("leaky_relu", std::move(y), {ia}, [ia, slope](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    const Tensor& x = t.value(ia);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += x[i] > 0 ? g[i] : slope * g[i];
  });
}

Var row_softmax(Var a) {
  const Tensor& x = a.value();
  require_rank2("row_softmax", x);
  Tensor y = x;
  auto m = view(y);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    m.row(r).array() -= m.row(r).maxCoeff();
    m.row(r) = m.row(r).array().exp();
    m.row(r) /= m.row(r).sum();
  }
  const auto ia = a.id();
  return a.tape().record("row_softmax", std::move(y), {ia}, [ia](Tape& t, std::size_t self) {
    auto g = view(t.upstream(self));
    auto s = view(t.value(self));
    auto ga = view(t.grad_slot(ia));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double dot = g.row(r).dot(s.row(r));
      ga.row(r).array() += s.row(r).array() * (g.row(r).array() - dot);
    }
  });
}

Var dropout(Var a, const Tensor& mask) {
  const Tensor& x = a.value();
  require_rank2("dropout", x);
  if (mask.shape() != x.shape()) mismatch("dropout", x, mask);
  Tensor y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= mask[i];
  const auto ia = a.id();
  return a.tape().record("dropout", std::move(y), {ia}, [ia, mask](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * mask[i];
  });
}

Var bce(Var scores, const Tensor& targets) {
  constexpr double kLo = 1e-12;
  constexpr double kHi = 1.0 - 1e-12;
  const Tensor& s = scores.value();
  require_rank2("bce", s);
  if (targets.shape() != s.shape()) mismatch("bce", s, targets);
  const double n = static_cast<double>(s.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double p = std::clamp(s[i], kLo, kHi);
    loss -= targets[i] * std::log(p) + (1.0 - targets[i]) * std::log(1.0 - p);
  }
  const auto ia = scores.id();
  return scores.tape().record("bce", Tensor::scalar(loss / n), {ia}, [ia, targets, n](Tape& t, std::size_t self) {
    const double g = t.upstream(self)[0];
    const Tensor& s = t.value(ia);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] < kLo || s[i] > kHi) continue;  // clamped: flat
      const double y = targets[i];
      ga[i] += g * (-y / s[i] + (1.0 - y) / (1.0 - s[i])) / n;
    }
  });
}

Var sum(Var a) {
  const Tensor& x = a.value();
  require_rank2("sum", x);
  double total = 0.0;
  for (double v : x.data()) total += v;
  const auto ia = a.id();
  return a.tape().record("sum", Tensor::scalar(total), {ia}, [ia](Tape& t, std::size_t self) {
    const double g = t.upstream(self)[0];
    for (auto& v : t.grad_slot(ia).data()) v += g;
  });
}

Var mean(Var a) { return scale(sum(a), 1.0 / static_cast<double>(a.value().size())); }

Var gather_rows(Var a, const Index& index) {
  const Tensor& x = a.value();
  require_rank2("gather_rows", x);
  if (index.empty()) throw ContractError("gather_rows: empty index");
  check_index("gather_rows", index, x.rows());
  const std::size_t cols = x.cols();
  Tensor y = Tensor::matrix(index.size(), cols);
  for (std::size_t r = 0; r < index.size(); ++r)
    std::copy_n(x.data().begin() + index[r] * cols, cols, y.data().begin() + r * cols);
  const auto ia = a.id();
  return a.tape().record("gather_rows", std::move(y), {ia}, [ia, index, cols](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t r = 0; r < index.size(); ++r) {
      double* dst = ga.data().data() + index[r] * cols;
      const double* src = g.data().data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
    }
  });
}

Var scatter_add_rows(Var a, const Index& index, std::size_t rows) {
  const Tensor& x = a.value();
  require_rank2("scatter_add_rows", x);
  if (index.size() != x.rows())
    throw ContractError("scatter_add_rows: " + std::to_string(index.size()) + " indices for " +
                        shape_string(x.shape()));
  check_index("scatter_add_rows", index, rows);
  const std::size_t cols = x.cols();
  Tensor y = Tensor::matrix(rows, cols);
  for (std::size_t r = 0; r < index.size(); ++r) {
    double* dst = y.data().data() + index[r] * cols;
    const double* src = x.data().data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
  }
  const auto ia = a.id();
  return a.tape().record("scatter_add_rows", std::move(y), {ia}, [ia, index, cols](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    Tensor& ga = t.grad_slot(ia);
    for (std::size_t r = 0; r < index.size(); ++r) {
      const double* src = g.data().data() + index[r] * cols;
      double* dst = ga.data().data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
    }
  });
}

Var segment_softmax(Var logits, const Index& segment, std::size_t segments) {
  const Tensor& x = logits.value();
  require_rank2("segment_softmax", x);
  if (segment.size() != x.rows())
    throw ContractError("segment_softmax: " + std::to_string(segment.size()) + " segment ids for " +
                        shape_string(x.shape()));
  check_index("segment_softmax", segment, segments);
  const std::size_t rows = x.rows(), cols = x.cols();
  std::vector<double> peak(segments * cols, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      double& m = peak[segment[r] * cols + c];
      m = std::max(m, x.at(r, c));
    }
  Tensor y = Tensor::matrix(rows, cols);
  std::vector<double> total(segments * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const double e = std::exp(x.at(r, c) - peak[segment[r] * cols + c]);
      y.at(r, c) = e;
      total[segment[r] * cols + c] += e;
    }
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) y.at(r, c) /= total[segment[r] * cols + c];

  const auto ia = logits.id();
  return logits.tape().record(
      "segment_softmax", std::move(y), {ia}, [ia, segment, segments](Tape& t, std::size_t self) {
        const Tensor& g = t.upstream(self);
        const Tensor& s = t.value(self);
        const std::size_t rows = s.rows(), cols = s.cols();
        std::vector<double> dot(segments * cols, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c) dot[segment[r] * cols + c] += g.at(r, c) * s.at(r, c);
        Tensor& ga = t.grad_slot(ia);
        for (std::size_t r = 0; r < rows; ++r)
          for (std::size_t c = 0; c < cols; ++c)
            ga.at(r, c) += s.at(r, c) * (g.at(r, c) - dot[segment[r] * cols + c]);
      });
}

namespace {

void check_heads(const char* op, const Tensor& a, std::size_t heads) {
  if (heads == 0 || a.cols() % heads != 0)
    throw ContractError(std::string(op) + ": " + std::to_string(a.cols()) + " columns not divisible by " +
                        std::to_string(heads) + " heads");
}

}  // namespace

Var head_sum(Var a, std::size_t heads) {
  const Tensor& x = a.value();
  require_rank2("head_sum", x);
  check_heads("head_sum", x, heads);
  const std::size_t rows = x.rows(), width = x.cols(), d = width / heads;
  Tensor y = Tensor::matrix(rows, heads);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t h = 0; h < heads; ++h) {
      double acc = 0.0;
      for (std::size_t c = h * d; c < (h + 1) * d; ++c) acc += x.at(r, c);
      y.at(r, h) = acc;
    }
  const auto ia = a.id();
  return a.tape().record("head_sum", std::move(y), {ia}, [ia, d](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    Tensor& ga = t.grad_slot(ia);
    const std::size_t heads = g.cols();
    for (std::size_t r = 0; r < ga.rows(); ++r)
      for (std::size_t h = 0; h < heads; ++h) {
        const double gh = g.at(r, h);
        double* row = &ga.at(r, h * d);
        for (std::size_t c = 0; c < d; ++c) row[c] += gh;
      }
  });
}

Var head_scale(Var a, Var coeff) {
  same_tape("head_scale", a, coeff);
  const Tensor& x = a.value();
  const Tensor& k = coeff.value();
  require_rank2("head_scale", x);
  require_rank2("head_scale", k);
  if (k.rows() != x.rows()) mismatch("head_scale", x, k);
  check_heads("head_scale", x, k.cols());
  const std::size_t d = x.cols() / k.cols();
  Tensor y = x;
  for (std::size_t r = 0; r < y.rows(); ++r)
    for (std::size_t h = 0; h < k.cols(); ++h) {
      const double kh = k.at(r, h);
      double* row = &y.at(r, h * d);
      for (std::size_t c = 0; c < d; ++c) row[c] *= kh;
    }
  const auto ia = a.id(), ik = coeff.id();
  return a.tape().record("head_scale", std::move(y), {ia, ik}, [ia, ik, d](Tape& t, std::size_t self) {
    const Tensor& g = t.upstream(self);
    const Tensor& xv = t.value(ia);
    const Tensor& kv = t.value(ik);
    const std::size_t heads = kv.cols();
    if (t.requires_grad(ia)) {
      Tensor& ga = t.grad_slot(ia);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t h = 0; h < heads; ++h) {
          const double kh = kv.at(r, h);
          for (std::size_t c = h * d; c < (h + 1) * d; ++c) ga.at(r, c) += g.at(r, c) * kh;
        }
    }
    if (t.requires_grad(ik)) {
      Tensor& gk = t.grad_slot(ik);
      for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t h = 0; h < heads; ++h) {
          double acc = 0.0;
          for (std::size_t c = h * d; c < (h + 1) * d; ++c) acc += g.at(r, c) * xv.at(r, c);
          gk.at(r, h) += acc;
        }
    }
  });
}

}  // namespace stged::diff
