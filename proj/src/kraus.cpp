#include "lcanon/kraus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lcanon/errors.hpp"
#include "lcanon/schatten.hpp"

namespace lcanon {

namespace {

constexpr double kHermitianTol = 1e-10;

bool is_uniform_standard(const WeightedBasis& wb) {
  return wb.is_standard_basis() && wb.weights() == Vector::Ones(wb.dim());
}

// Phase so that the largest-magnitude entry (first on ties) is real positive.
void fix_phase(Eigen::Ref<Vector> v) {
  Index best = 0;
  double best_abs = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs > 0.0) v *= std::abs(v(best)) / v(best);
}

}  // namespace

KrausSet::KrausSet(Index din, Index dout, std::vector<Operator> ops)
    : dim_in(din), dim_out(dout), operators(std::move(ops)) {
  if (din <= 0 || dout <= 0) throw ValidationError("KrausSet: dimensions must be positive");
  for (std::size_t j = 0; j < operators.size(); ++j) {
    const Operator& v = operators[j];
    if (v.rows() != dout || v.cols() != din) {
      throw ValidationError("KrausSet: operator " + std::to_string(j) + " is " +
                            std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                            ", expected " + std::to_string(dout) + "x" + std::to_string(din));
    }
    require_finite(v, "KrausSet operator");
  }
}

KrausSet::KrausSet(std::vector<Operator> ops) {
  if (ops.empty()) throw ValidationError("KrausSet: cannot infer dimensions from an empty list");
  const Index din = ops.front().cols();
  const Index dout = ops.front().rows();
  *this = KrausSet(din, dout, std::move(ops));
}

Operator KrausSet::gram() const {
  Operator sum = Operator::Zero(dim_in, dim_in);
  for (const Operator& v : operators) sum += v.adjoint() * v;
  return sum;
}

KrausSet KrausSet::adjoint() const {
  std::vector<Operator> adj;
  adj.reserve(operators.size());
  for (const Operator& v : operators) adj.push_back(v.adjoint());
  return {dim_out, dim_in, std::move(adj)};
}

double psd_threshold(const Operator& c, double psd_tol) {
  return psd_tol * std::max(1.0, std::abs(c.trace()));
}

KrausSet kraus_from_choi(const ChoiOperator& c, const WeightedBasis& wb, double rank_tol,
                         double psd_tol) {
  const Index din = c.dim_in;
  const Index dout = c.dim_out;
  if (din <= 0 || dout <= 0 || c.matrix.rows() != din * dout ||
      c.matrix.cols() != din * dout || wb.dim() != din) {
    throw ValidationError("kraus_from_choi: Choi operator shape does not match dimensions");
  }
  require_finite(c.matrix, "kraus_from_choi");
  if (hermiticity_defect(c.matrix) > kHermitianTol * std::max(1.0, max_abs(c.matrix))) {
    throw ValidationError("kraus_from_choi: Choi operator is not Hermitian");
  }
  const Operator hermitian = 0.5 * (c.matrix + c.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> given(hermitian, Eigen::EigenvaluesOnly);
  if (given.info() != Eigen::Success) {
    throw NumericalError("kraus_from_choi: eigendecomposition failed");
  }
  const double min_eig = given.eigenvalues().minCoeff();
  if (min_eig < -psd_threshold(hermitian, psd_tol)) {
    throw NotCompletelyPositiveError("kraus_from_choi: Choi operator has eigenvalue " +
                                     std::to_string(min_eig) + ", map is not CP");
  }

  // Undo the weighting so the eigenvectors are vec(W_m) of Phi o G(.)G*.
  Operator standard = hermitian;
  const bool weighted = !is_uniform_standard(wb);
  if (weighted) {
    if (!wb.all_nonzero()) {
      throw PreconditionError("kraus_from_choi: weighted basis has a vanishing weight");
    }
    const Operator unlift =
        kron(wb.weights().conjugate().cwiseInverse().asDiagonal() * wb.basis().adjoint(),
             Operator::Identity(dout, dout));
    standard = unlift * hermitian * unlift.adjoint();
    standard = 0.5 * (standard + standard.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(standard);
  if (es.info() != Eigen::Success) {
    throw NumericalError("kraus_from_choi: eigendecomposition failed");
  }
  const RealVector& mu = es.eigenvalues();  // ascending
  KrausSet out(din, dout);
  const double mu_max = mu.size() > 0 ? mu(mu.size() - 1) : 0.0;
  std::vector<double> kept;
  if (mu_max > 0.0) {
    for (Index m = mu.size() - 1; m >= 0; --m) {
      if (mu(m) <= rank_tol * mu_max) break;
      Vector w = es.eigenvectors().col(m);
      fix_phase(w);
      Operator v = std::sqrt(mu(m)) * unvec(w, dout, din);
      if (weighted && !wb.is_standard_basis()) v = v * wb.basis().adjoint();
      out.operators.push_back(std::move(v));
      kept.push_back(mu(m));
    }
  }
  out.eigenvalues = Eigen::Map<const RealVector>(kept.data(), static_cast<Index>(kept.size()));
  return out;
}

KrausSet kraus_from_choi(const ChoiOperator& c, double rank_tol, double psd_tol) {
  return kraus_from_choi(c, WeightedBasis::uniform(c.dim_in), rank_tol, psd_tol);
}

SuperOperator superop_from_kraus(const KrausSet& ks) {
  SuperOperator out = SuperOperator::zero(ks.dim_in, ks.dim_out);
  for (const Operator& v : ks.operators) out.matrix += kron(v.conjugate(), v);
  return out;
}

CpVerdict is_completely_positive(const SuperOperator& phi, double tol) {
  const ChoiOperator c = choi_map(phi, WeightedBasis::uniform(phi.dim_in));
  const Operator hermitian = 0.5 * (c.matrix + c.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("is_completely_positive: eigendecomposition failed");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  const bool hermitian_ok =
      hermiticity_defect(c.matrix) <= kHermitianTol * std::max(1.0, max_abs(c.matrix));
  return {hermitian_ok && min_eig >= -tol, min_eig};
}

WeightedTrace weighted_trace_via_kraus(const KrausSet& ks, const Operator& b) {
  require_square(b, "weighted_trace_via_kraus B");
  if (b.rows() != ks.dim_in || ks.dim_in != ks.dim_out) {
    throw ValidationError("weighted_trace_via_kraus: B must match the square Kraus shape");
  }
  WeightedTrace out{0.0, Vector::Zero(static_cast<Index>(ks.size()))};
  const Operator b_conj = b.conjugate();
  for (std::size_t j = 0; j < ks.size(); ++j) {
    // tr(B* V) = sum_ab conj(B_ab) V_ab
    out.v(static_cast<Index>(j)) = b_conj.cwiseProduct(ks.operators[j]).sum();
  }
  out.value = out.v.squaredNorm();
  return out;
}

double weighted_trace_bound(const KrausSet& ks, const Operator& b) {
  const double b1 = schatten_norm(b, 1.0);
  return b1 * b1 * one_to_one_norm_cp(ks);
}

bool is_in_cp_b(const KrausSet& ks, const Operator& b, double tol) {
  const WeightedTrace wt = weighted_trace_via_kraus(ks, b);
  const double b1 = schatten_norm(b, 1.0);
  double kraus_scale = 0.0;
  for (const Operator& v : ks.operators) {
    const double n = schatten_norm(v, kInfinity);
    kraus_scale += n * n;
  }
  return wt.value <= tol * (1.0 + b1 * b1 * kraus_scale);
}

double one_to_one_norm_cp(const KrausSet& ks) {
  if (ks.empty()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Operator> es(ks.gram(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("one_to_one_norm_cp: eigendecomposition failed");
  }
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

}  // namespace lcanon
