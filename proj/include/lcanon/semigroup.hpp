#pragma once

#include <vector>

#include "lcanon/gksl.hpp"
#include "lcanon/superop.hpp"

namespace lcanon {

// e^{tL} by scaling and squaring with a Pade approximant.
SuperOperator evolve(const Generator& l, double t);

struct SemigroupPairResidual {
  double s;
  double t;
  double residual;  // max |e^{(s+t)L} - e^{sL} e^{tL}|
};

struct EvolutionReport {
  std::vector<double> t_grid;
  std::vector<double> min_choi_eigenvalues;
  // ||dual(e^{tL})(1) - 1||_inf per t.
  std::vector<double> trace_deviation;
  std::vector<SemigroupPairResidual> semigroup_residuals;
  double psd_tol = 1e-9;

  // Every min Choi eigenvalue is >= -psd_tol.
  bool completely_positive() const;
  bool trace_preserving(double tol) const;
};

// Pairs (s, t) are checked whenever s + t is also on the grid.
EvolutionReport check_semigroup(const Generator& l, const std::vector<double>& t_grid,
                                double psd_tol = 1e-9);

}  // namespace lcanon
