#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "lcanon/linalg.hpp"

namespace lcanon {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// X = sum_j s_j |f_j><g_j| with s_1 >= s_2 >= ... >= 0.
struct SchmidtDecomposition {
  RealVector singular_values;
  Operator left_vectors;   // columns f_j
  Operator right_vectors;  // columns g_j

  // Number of singular values above s_1 * 1e-13.
  Index rank() const;
  Operator reconstruct() const;
};

// Thin SVD with singular values sorted non-increasing. Equal singular values
// keep the SVD routine's order, stabilized lexicographically on f_j.
SchmidtDecomposition svd_schmidt(const Operator& x);

inline constexpr double kRankCutoff = 1e-13;

struct SchattenNorm {
  double value = 0.0;
  // False for p in (0, 1), where the functional is only a quasi-norm.
  bool is_norm = true;

  operator double() const { return value; }
};

// (sum_j s_j^p)^{1/p}; p = kInfinity gives the operator norm.
SchattenNorm schatten_norm(const Operator& x, double p);

Complex trace(const Operator& x);

// tr(X* Y).
Complex hs_inner(const Operator& x, const Operator& y);

// Splits X = Y Z with Y = sum s_j^{r/p} |f_j><f_j| and
// Z = sum s_j^{r/q} |f_j><g_j|, where 1/r = 1/p + 1/q.
std::pair<Operator, Operator> factor_split(const Operator& x, double p, double q);

// tr_H of an operator on H (x) Z; H is the leading tensor factor.
Operator partial_trace_first(const Operator& a, Index dim_h, Index dim_z);

// sum_{k in rows, j in cols} <f_k, A g_j> |f_k><g_j|, embedded at full shape.
// Indices are zero-based; basis_f and basis_g hold the basis vectors as columns.
Operator block_truncate(const Operator& a, const std::vector<Index>& row_set,
                        const std::vector<Index>& col_set, const Operator& basis_f,
                        const Operator& basis_g);

}  // namespace lcanon
