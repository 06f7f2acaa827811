#include "lcanon/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "lcanon/choi.hpp"
#include "lcanon/errors.hpp"

namespace lcanon {

namespace {

double min_choi_eigenvalue(const SuperOperator& phi) {
  const ChoiOperator c = choi_map(phi, WeightedBasis::uniform(phi.dim_in));
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (c.matrix + c.matrix.adjoint()),
                                             Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("check_semigroup: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

}  // namespace

SuperOperator evolve(const Generator& l, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ValidationError("evolve: t must be finite and non-negative");
  }
  if (!l.superop.is_square()) throw ValidationError("evolve: generator must be square");
  const Index d = l.dim();
  if (t == 0.0) return SuperOperator::identity(d);
  const Operator scaled = t * l.superop.matrix;
  Operator e = scaled.exp();
  if (!e.allFinite()) {
    throw NumericalError("evolve: matrix exponential overflowed at t = " + std::to_string(t));
  }
  return {d, d, std::move(e)};
}

bool EvolutionReport::completely_positive() const {
  return std::all_of(min_choi_eigenvalues.begin(), min_choi_eigenvalues.end(),
                     [&](double v) { return v >= -psd_tol; });
}

bool EvolutionReport::trace_preserving(double tol) const {
  return std::all_of(trace_deviation.begin(), trace_deviation.end(),
                     [&](double v) { return v <= tol; });
}

EvolutionReport check_semigroup(const Generator& l, const std::vector<double>& t_grid,
                                double psd_tol) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw ValidationError("check_semigroup: t grid must be ascending and non-negative");
    }
  }
  const Index d = l.dim();
  EvolutionReport report;
  report.t_grid = t_grid;
  report.psd_tol = psd_tol;
  std::vector<SuperOperator> flows;
  flows.reserve(t_grid.size());
  const Operator id = Operator::Identity(d, d);
  for (double t : t_grid) {
    flows.push_back(evolve(l, t));
    const SuperOperator& flow = flows.back();
    report.min_choi_eigenvalues.push_back(min_choi_eigenvalue(flow));
    report.trace_deviation.push_back(max_abs(lcanon::apply(dual(flow), id) - id));
  }

  // Grid points are exact doubles; s + t is matched with a relative slack.
  auto find = [&](double value) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (std::abs(t_grid[i] - value) <= 1e-12 * std::max(1.0, value)) {
        return static_cast<std::ptrdiff_t>(i);
      }
    }
    return -1;
  };
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = i; j < t_grid.size(); ++j) {
      const std::ptrdiff_t k = find(t_grid[i] + t_grid[j]);
      if (k < 0) continue;
      const Operator product = flows[i].matrix * flows[j].matrix;
      report.semigroup_residuals.push_back(
          {t_grid[i], t_grid[j], max_abs(flows[static_cast<std::size_t>(k)].matrix - product)});
    }
  }
  return report;
}

}  // namespace lcanon
