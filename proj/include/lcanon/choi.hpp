#pragma once

#include <string>
#include <vector>

#include "lcanon/linalg.hpp"
#include "lcanon/superop.hpp"

namespace lcanon {

// Orthonormal basis {g_j} (columns of a unitary) with weights lambda_j.
// The associated reference operator is B = sum_j lambda_j |g_j><g_j|.
class WeightedBasis {
public:
  // Standard basis with the given weights.
  explicit WeightedBasis(Vector weights, std::string rule = "explicit");
  WeightedBasis(Operator basis, Vector weights, std::string rule = "explicit");

  static WeightedBasis uniform(Index d);

  Index dim() const { return weights_.size(); }
  const Operator& basis() const { return basis_; }
  const Vector& weights() const { return weights_; }
  Vector column(Index j) const { return basis_.col(j); }
  bool all_nonzero() const { return all_nonzero_; }
  // Name of the rule that generated the weights ("explicit", "geometric:0.5", ...).
  const std::string& rule() const { return rule_; }
  bool is_standard_basis() const;

  Operator reference() const;

private:
  Operator basis_;
  Vector weights_;
  std::string rule_;
  bool all_nonzero_ = true;
};

// Choi operator on H (x) Z, first factor the input index.
struct ChoiOperator {
  Index dim_in = 0;
  Index dim_out = 0;
  Operator matrix;
};

// Gamma = sum_j conj(lambda_j) g_j (x) g_j.
Vector entangled_vector(const WeightedBasis& wb);

// sum_{j,k} conj(lambda_j) lambda_k |g_j><g_k| (x) Phi(|g_j><g_k|).
ChoiOperator choi_map(const SuperOperator& phi, const WeightedBasis& wb);

// Inverse of choi_map; requires every lambda_j != 0.
SuperOperator choi_inverse(const ChoiOperator& c, const WeightedBasis& wb);

// vec_G X = sum_j g_j (x) X g_j.
Vector vectorize(const Operator& x, const WeightedBasis& wb);

// <vec_G X, C(Phi) vec_G Y>, which equals tr(Phi((XB)* (.) YB)).
Complex weighted_trace_via_choi(const SuperOperator& phi, const WeightedBasis& wb,
                                const Operator& x, const Operator& y);

struct KernelWitness {
  SuperOperator map;     // X -> <g_j, X g_j> Z
  double choi_hs_norm;   // ||C(map)||_2, zero up to rounding
};

// Nonzero map in the kernel of the weighted Choi map when lambda_j = 0.
KernelWitness kernel_witness(const WeightedBasis& wb, Index j, const Operator& z);

// Weight sequences lambda_j, j = 1, 2, ...
struct WeightRule {
  enum class Kind { geometric, power };
  Kind kind = Kind::geometric;
  double parameter = 0.5;

  // Parses "geometric:r" or "power:p".
  static WeightRule parse(const std::string& text);
  double weight(Index j) const;
  std::string name() const;
};

struct WitnessRow {
  Index dim;
  double sup_norm;  // ||Lambda_d||_inf = max_{j<=d} (j |lambda_j|)^{-2}
};

// Truncations of the diagonal operator sum_j (j |lambda_j|)^{-2} |g_j><g_j|
// whose norms grow without bound.
std::vector<WitnessRow> surjectivity_witness(const WeightRule& rule,
                                             const std::vector<Index>& dims);

}  // namespace lcanon
