#pragma once

#include <optional>
#include <vector>

#include "lcanon/choi.hpp"
#include "lcanon/linalg.hpp"
#include "lcanon/superop.hpp"

namespace lcanon {

// Phi = sum_j V_j (.) V_j*, every V_j of shape dim_out x dim_in.
struct KrausSet {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<Operator> operators;
  // Choi eigenvalues the operators were extracted from, if any.
  std::optional<RealVector> eigenvalues;

  KrausSet() = default;
  KrausSet(Index din, Index dout, std::vector<Operator> ops = {});
  // Infers the shape from the first operator; ops must be non-empty.
  explicit KrausSet(std::vector<Operator> ops);

  std::size_t size() const { return operators.size(); }
  bool empty() const { return operators.empty(); }

  // sum_j V_j* V_j
  Operator gram() const;
  // {V_j*}
  KrausSet adjoint() const;
};

inline constexpr double kDefaultRankTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-9;

// Eigenvalue threshold below which a Choi operator counts as not PSD:
// psd_tol scaled by |tr C| when that exceeds one.
double psd_threshold(const Operator& c, double psd_tol);

// Kraus operators sqrt(mu_m) unvec(w_m) from the eigenpairs of C with
// mu_m > rank_tol * mu_max. Each eigenvector is phased so its largest entry
// is real positive. The weighted basis C was built with is undone first.
KrausSet kraus_from_choi(const ChoiOperator& c, const WeightedBasis& wb,
                         double rank_tol = kDefaultRankTol,
                         double psd_tol = kDefaultPsdTol);
KrausSet kraus_from_choi(const ChoiOperator& c, double rank_tol = kDefaultRankTol,
                         double psd_tol = kDefaultPsdTol);

// Matrix sum_j conj(V_j) (x) V_j.
SuperOperator superop_from_kraus(const KrausSet& ks);

struct CpVerdict {
  bool completely_positive;
  double min_eigenvalue;
};

CpVerdict is_completely_positive(const SuperOperator& phi, double tol = kDefaultPsdTol);

struct WeightedTrace {
  double value;  // ||v||_2^2 = tr(Phi(B* (.) B))
  Vector v;      // v_j = tr(B* V_j)
};

WeightedTrace weighted_trace_via_kraus(const KrausSet& ks, const Operator& b);

// Upper bound ||B||_1^2 ||sum V_j* V_j||_inf on the weighted trace.
double weighted_trace_bound(const KrausSet& ks, const Operator& b);

// Membership in CP_B with a tolerance scaled by 1 + ||B||_1^2 sum ||V_j||_inf^2.
bool is_in_cp_b(const KrausSet& ks, const Operator& b, double tol);

// ||sum_j V_j* V_j||_inf, the 1->1 norm of a CP map.
double one_to_one_norm_cp(const KrausSet& ks);

}  // namespace lcanon
