#include "lcanon/schatten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "lcanon/errors.hpp"

namespace lcanon {

namespace {

bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

Index SchmidtDecomposition::rank() const {
  if (singular_values.size() == 0) return 0;
  const double cutoff = singular_values(0) * kRankCutoff;
  Index r = 0;
  while (r < singular_values.size() && singular_values(r) > cutoff) ++r;
  return r;
}

Operator SchmidtDecomposition::reconstruct() const {
  return left_vectors * singular_values.cast<Complex>().asDiagonal() *
         right_vectors.adjoint();
}

SchmidtDecomposition svd_schmidt(const Operator& x) {
  require_finite(x, "svd_schmidt");
  Eigen::BDCSVD<Operator> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("svd_schmidt: SVD did not converge");
  }
  const RealVector s = svd.singularValues();
  const Operator& u = svd.matrixU();
  const Operator& v = svd.matrixV();
  const Index n = s.size();

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return s(a) > s(b); });

  // Re-order runs of (numerically) equal singular values by their left vectors.
  const double tie = n > 0 ? s(order[0]) * kRankCutoff : 0.0;
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && s(order[start]) - s(order[end]) <= tie) ++end;
    if (end - start > 1) {
      std::stable_sort(order.begin() + start, order.begin() + end, [&](Index a, Index b) {
        return lex_less(u.col(a), u.col(b));
      });
    }
    start = end;
  }

  SchmidtDecomposition out;
  out.singular_values.resize(n);
  out.left_vectors.resize(u.rows(), n);
  out.right_vectors.resize(v.rows(), n);
  for (Index i = 0; i < n; ++i) {
    const Index k = order[static_cast<std::size_t>(i)];
    out.singular_values(i) = s(k);
    out.left_vectors.col(i) = u.col(k);
    out.right_vectors.col(i) = v.col(k);
  }
  return out;
}

SchattenNorm schatten_norm(const Operator& x, double p) {
  if (!(p > 0.0)) {
    throw ValidationError("schatten_norm: p must be positive, got " + std::to_string(p));
  }
  const RealVector s = svd_schmidt(x).singular_values;
  SchattenNorm out;
  out.is_norm = p >= 1.0;
  if (s.size() == 0) return out;
  if (std::isinf(p)) {
    out.value = s.maxCoeff();
    return out;
  }
  if (p == 1.0) {
    out.value = s.sum();
    return out;
  }
  if (p == 2.0) {
    out.value = s.norm();
    return out;
  }
  // Scale by s_1 so large p does not overflow.
  const double top = s.maxCoeff();
  if (top == 0.0) return out;
  // Below numerical rank the singular values are roundoff; for p < 1 they would dominate.
  const double floor = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(x.rows(), x.cols())) * top;
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) {
    if (p < 1.0 && s(i) <= floor) continue;
    acc += std::pow(s(i) / top, p);
  }
  out.value = top * std::pow(acc, 1.0 / p);
  return out;
}

Complex trace(const Operator& x) {
  require_square(x, "trace");
  return x.trace();
}

Complex hs_inner(const Operator& x, const Operator& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw ValidationError("hs_inner: shape mismatch");
  }
  // tr(X* Y) = sum_ij conj(X_ij) Y_ij
  return (x.conjugate().cwiseProduct(y)).sum();
}

std::pair<Operator, Operator> factor_split(const Operator& x, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw ValidationError("factor_split: p and q must be positive");
  }
  const double inv_r = 1.0 / p + 1.0 / q;
  const double exp_y = (1.0 / p) / inv_r;  // r / p
  const double exp_z = (1.0 / q) / inv_r;  // r / q
  const SchmidtDecomposition sd = svd_schmidt(x);
  const Index n = sd.singular_values.size();
  Vector sy(n), sz(n);
  for (Index i = 0; i < n; ++i) {
    sy(i) = std::pow(sd.singular_values(i), exp_y);
    sz(i) = std::pow(sd.singular_values(i), exp_z);
  }
  Operator y = sd.left_vectors * sy.asDiagonal() * sd.left_vectors.adjoint();
  Operator z = sd.left_vectors * sz.asDiagonal() * sd.right_vectors.adjoint();
  return {std::move(y), std::move(z)};
}

Operator partial_trace_first(const Operator& a, Index dim_h, Index dim_z) {
  if (dim_h <= 0 || dim_z <= 0 || a.rows() != dim_h * dim_z || a.cols() != dim_h * dim_z) {
    throw ValidationError("partial_trace_first: operator is " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + ", expected square of size " +
                          std::to_string(dim_h * dim_z));
  }
  Operator out = Operator::Zero(dim_z, dim_z);
  for (Index h = 0; h < dim_h; ++h) out += a.block(h * dim_z, h * dim_z, dim_z, dim_z);
  return out;
}

Operator block_truncate(const Operator& a, const std::vector<Index>& row_set,
                        const std::vector<Index>& col_set, const Operator& basis_f,
                        const Operator& basis_g) {
  if (basis_f.rows() != a.rows() || basis_f.cols() != a.rows() ||
      basis_g.rows() != a.cols() || basis_g.cols() != a.cols()) {
    throw ValidationError("block_truncate: basis shapes do not match the operator");
  }
  RealVector keep_rows = RealVector::Zero(a.rows());
  RealVector keep_cols = RealVector::Zero(a.cols());
  for (Index k : row_set) {
    if (k < 0 || k >= a.rows()) {
      throw ValidationError("block_truncate: row index " + std::to_string(k) + " out of range");
    }
    keep_rows(k) = 1.0;
  }
  for (Index j : col_set) {
    if (j < 0 || j >= a.cols()) {
      throw ValidationError("block_truncate: column index " + std::to_string(j) +
                            " out of range");
    }
    keep_cols(j) = 1.0;
  }
  const Operator coeffs = basis_f.adjoint() * a * basis_g;  // <f_k, A g_j>
  const Operator kept = keep_rows.cast<Complex>().asDiagonal() * coeffs *
                        keep_cols.cast<Complex>().asDiagonal();
  return basis_f * kept * basis_g.adjoint();
}

}  // namespace lcanon
