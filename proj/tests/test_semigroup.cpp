#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lcanon/choi.hpp"
#include "lcanon/errors.hpp"
#include "lcanon/gksl.hpp"
#include "lcanon/semigroup.hpp"
#include "support.hpp"

using namespace lcanon;
using lcanon::testing::Rng;

namespace {

Operator lowering() {
  Operator v = Operator::Zero(2, 2);
  v(0, 1) = 1.0;
  return v;
}

Operator sigma_z() {
  Operator z = Operator::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

std::vector<double> grid(double step, double stop) {
  std::vector<double> out;
  for (int i = 0; i * step <= stop + 1e-12; ++i) out.push_back(i * step);
  return out;
}

}  // namespace

TEST_CASE("evolve at t = 0 is the identity") {
  Rng rng(71);
  const Generator l = build_gksl_generator(lcanon::testing::random_hermitian(rng, 3),
                                           lcanon::testing::random_kraus(rng, 3, 2));
  CHECK(max_abs(evolve(l, 0.0).matrix - Operator::Identity(9, 9)) == 0.0);
  CHECK_THROWS_AS(evolve(l, -1.0), ValidationError);
}

TEST_CASE("amplitude damping population decay") {
  const Generator damp = build_gksl_generator(Operator::Zero(2, 2), KrausSet(2, 2, {lowering()}));
  const Operator one = ket_bra(basis_vector(2, 1), basis_vector(2, 1));
  const Operator rho = lcanon::apply(evolve(damp, std::log(2.0)), one);
  CHECK(std::abs(rho(1, 1) - 0.5) <= 1e-13);
  CHECK(std::abs(rho(0, 0) - 0.5) <= 1e-13);
  for (double t : {0.1, 1.0, 3.0}) {
    CHECK(std::abs(lcanon::apply(evolve(damp, t), one)(1, 1) - std::exp(-t)) <= 1e-13);
  }
}

TEST_CASE("sigma_z rotation by pi is the identity channel") {
  const Generator zrot = build_gksl_generator(sigma_z(), KrausSet(2, 2));
  CHECK(max_abs(evolve(zrot, std::numbers::pi).matrix - Operator::Identity(4, 4)) <= 1e-13);
  // Quarter period: conjugation by diag(e^{-i pi/4}, e^{i pi/4}) flips the off-diagonal phase by -i.
  Rng rng(72);
  const Operator x = lcanon::testing::random_operator(rng, 2, 2);
  const Operator y = lcanon::apply(evolve(zrot, std::numbers::pi / 4.0), x);
  CHECK(std::abs(y(0, 1) - Complex(0.0, -1.0) * x(0, 1)) <= 1e-13);
  CHECK(std::abs(y(0, 0) - x(0, 0)) <= 1e-13);
}

TEST_CASE("semigroup law and finite difference") {
  Rng rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = rng.integer(2, 4);
    const Generator l = build_cp_generator(lcanon::testing::random_operator(rng, d, d),
                                           lcanon::testing::random_kraus(rng, d, 2));
    const double s = rng.uniform(0.0, 1.0);
    const double t = rng.uniform(0.0, 1.0);
    const Operator lhs = evolve(l, s + t).matrix;
    const Operator rhs = evolve(l, s).matrix * evolve(l, t).matrix;
    CHECK(max_abs(lhs - rhs) <= 1e-9 * std::max(1.0, max_abs(lhs)));

    std::vector<double> err;
    for (double h : {1e-3, 1e-4}) {
      const Operator fd = (evolve(l, h).matrix - Operator::Identity(d * d, d * d)) / h;
      err.push_back(max_abs(fd - l.superop.matrix));
    }
    const double c = max_abs(l.superop.matrix * l.superop.matrix);
    CHECK(err[0] <= c * 1e-3);
    CHECK(err[1] <= c * 1e-4);
    CHECK(err[1] < err[0]);
    // First order: a tenfold step cut cuts the error about tenfold.
    CHECK(err[0] / err[1] == doctest::Approx(10.0).epsilon(0.05));
  }
}

TEST_CASE("check_semigroup on canonical amplitude damping") {
  const Generator damp = build_gksl_generator(Operator::Zero(2, 2), KrausSet(2, 2, {lowering()}));
  const CanonicalDecomposition cd = canonicalize_cptp(damp, 0.5 * identity(2));
  const Generator rebuilt = build_gksl_generator(*cd.h, cd.phi);
  const EvolutionReport r = check_semigroup(rebuilt, {0.0, 0.5, 1.0, 2.0});
  CHECK(r.completely_positive());
  CHECK(r.trace_preserving(1e-9));
  REQUIRE(r.min_choi_eigenvalues.size() == 4);
  REQUIRE(r.trace_deviation.size() == 4);
  // (0,0) (0,0.5) (0,1) (0,2) (0.5,0.5) (1,1) and the mirrored pairs.
  CHECK_FALSE(r.semigroup_residuals.empty());
  for (const auto& p : r.semigroup_residuals) CHECK(p.residual <= 1e-12);
}

TEST_CASE("check_semigroup flags a non-generator") {
  Operator t = Operator::Zero(4, 4);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) t(a * 2 + b, b * 2 + a) = 1.0;
  const EvolutionReport r = check_semigroup({SuperOperator(2, 2, t)}, {0.0, 0.01, 0.1});
  CHECK_FALSE(r.completely_positive());
  CHECK(r.min_choi_eigenvalues[1] < -1e-3);
}

TEST_CASE("zero generator is constant") {
  const EvolutionReport r = check_semigroup({SuperOperator::zero(3, 3)}, grid(1.0, 3.0));
  CHECK(r.completely_positive());
  CHECK(r.trace_preserving(0.0));
  for (double t : r.t_grid) CHECK(max_abs(evolve({SuperOperator::zero(3, 3)}, t).matrix - Operator::Identity(9, 9)) == 0.0);
}

TEST_CASE("check_semigroup input validation") {
  CHECK_THROWS_AS(check_semigroup({SuperOperator::zero(2, 2)}, {1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(check_semigroup({SuperOperator::zero(2, 2)}, {-1.0, 0.5}), ValidationError);
}

TEST_CASE("canonical decompositions generate CP dynamics on [0, 5]") {
  Rng rng(74);
  for (int trial = 0; trial < 5; ++trial) {
    const Index d = rng.integer(2, 4);
    const Generator l = build_gksl_generator(lcanon::testing::random_hermitian(rng, d),
                                             lcanon::testing::random_kraus(rng, d, 2, 0.5));
    const CanonicalDecomposition cd = canonicalize_cptp(l, lcanon::testing::random_reference(rng, d));
    const EvolutionReport r = check_semigroup(build_gksl_generator(*cd.h, cd.phi), grid(0.25, 5.0));
    CHECK(r.completely_positive());
    CHECK(r.trace_preserving(1e-9));
    for (const auto& p : r.semigroup_residuals) CHECK(p.residual <= 1e-9);
  }
}
