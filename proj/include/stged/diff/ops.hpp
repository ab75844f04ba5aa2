#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stged/diff/tape.hpp"

// Differentiable primitives. Every operand must be rank 2; a shape mismatch
// throws ContractError naming the op and both shapes. Results are recorded
// on the operands' tape.
namespace stged::diff {

using Index = std::vector<std::uint32_t>;

Var matmul(Var a, Var b);
Var add(Var a, Var b);
Var sub(Var a, Var b);
Var mul(Var a, Var b);
/// a[m x n] + row[1 x n], broadcast down the rows.
Var add_row(Var a, Var row);
/// a[m x n] * row[1 x n], broadcast down the rows.
Var mul_row(Var a, Var row);
/// a[m x n] scaled row-wise by s[m x 1].
Var scale_rows(Var a, Var s);
Var scale(Var a, double factor);
/// factor * a + offset, elementwise.
Var affine(Var a, double factor, double offset);

Var concat_cols(std::span<const Var> parts);
Var concat_rows(std::span<const Var> parts);

Var sigmoid(Var a);
Var tanh(Var a);
Var leaky_relu(Var a, double slope = 0.01);
/// Softmax along each row, max-subtracted.
Var row_softmax(Var a);

/// a * mask. The mask already carries the 1/(1-p) rescaling of kept entries.
Var dropout(Var a, const Tensor& mask);

/// Mean binary cross-entropy of probabilities against 0/1 targets of the
/// same shape. Scores are clamped to [1e-12, 1 - 1e-12].
Var bce(Var scores, const Tensor& targets);

Var sum(Var a);
Var mean(Var a);

/// out[r] = a[index[r]].
Var gather_rows(Var a, const Index& index);
/// out[index[r]] += a[r]; out has `rows` rows.
Var scatter_add_rows(Var a, const Index& index, std::size_t rows);
/// Column-wise softmax over the rows sharing a segment id. Segments with no
/// rows are ignored.
Var segment_softmax(Var logits, const Index& segment, std::size_t segments);

/// Per-head row sums: columns are split into `heads` equal blocks and each
/// block is summed, giving rows x heads.
Var head_sum(Var a, std::size_t heads);
/// a[m x (heads d)] with each head block of row r scaled by coeff[r, head].
Var head_scale(Var a, Var coeff);

inline Var operator+(Var a, Var b) { return add(a, b); }
inline Var operator-(Var a, Var b) { return sub(a, b); }
inline Var operator*(Var a, Var b) { return mul(a, b); }

}  // namespace stged::diff
