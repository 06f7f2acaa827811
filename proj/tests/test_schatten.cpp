#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lcanon/errors.hpp"
#include "lcanon/schatten.hpp"
#include "support.hpp"

using namespace lcanon;
using lcanon::testing::Rng;

namespace {

Operator diag2(Complex a, Complex b) {
  Operator x = Operator::Zero(2, 2);
  x(0, 0) = a;
  x(1, 1) = b;
  return x;
}

// Eigenvalues of a 3x3 Hermitian matrix from its characteristic polynomial.
std::vector<double> char_poly_eigenvalues(const Operator& a) {
  auto minor2 = [&](int i, int j) { return a(i, i) * a(j, j) - a(i, j) * a(j, i); };
  const Complex tr = a(0, 0) + a(1, 1) + a(2, 2);
  const Complex c1 = minor2(0, 1) + minor2(0, 2) + minor2(1, 2);
  const Complex det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                      a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                      a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  const auto roots = lcanon::testing::polynomial_roots({-det, c1, -tr});
  std::vector<double> out;
  for (Complex r : roots) out.push_back(r.real());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

TEST_CASE("svd_schmidt on diagonal and rank-one operators") {
  const SchmidtDecomposition sd = svd_schmidt(diag2(3.0, -4.0));
  CHECK(sd.singular_values(0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(sd.singular_values(1) == doctest::Approx(3.0).epsilon(1e-14));

  Rng rng(11);
  Vector x = lcanon::testing::random_vector(rng, 3);
  Vector y = lcanon::testing::random_vector(rng, 4);
  x.normalize();
  y.normalize();
  const SchmidtDecomposition r1 = svd_schmidt(ket_bra(x, y));
  CHECK(r1.rank() == 1);
  CHECK(r1.singular_values(0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("svd_schmidt singular values match characteristic polynomial of X*X") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator x = lcanon::testing::random_operator(rng, 4, 3);
    const SchmidtDecomposition sd = svd_schmidt(x);
    const std::vector<double> eig = char_poly_eigenvalues(x.adjoint() * x);
    REQUIRE(sd.singular_values.size() == 3);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(sd.singular_values(j) - std::sqrt(std::max(0.0, eig[static_cast<std::size_t>(j)]))) <= 1e-10);
    }
    CHECK(max_abs(sd.reconstruct() - x) <= 1e-12);
    CHECK(max_abs(sd.left_vectors.adjoint() * sd.left_vectors - Operator::Identity(3, 3)) <= 1e-12);
    CHECK(max_abs(sd.right_vectors.adjoint() * sd.right_vectors - Operator::Identity(3, 3)) <= 1e-12);
  }
}

TEST_CASE("svd_schmidt is deterministic on degenerate singular values") {
  const Operator x = identity(3);
  const SchmidtDecomposition a = svd_schmidt(x);
  const SchmidtDecomposition b = svd_schmidt(x);
  CHECK(a.left_vectors == b.left_vectors);
  CHECK(a.rank() == 3);
  CHECK(svd_schmidt(Operator::Zero(2, 2)).rank() == 0);
}

TEST_CASE("svd_schmidt rejects non-finite input") {
  Operator x = identity(2);
  x(0, 1) = std::nan("");
  CHECK_THROWS_AS(svd_schmidt(x), ValidationError);
}

TEST_CASE("schatten_norm on known singular values") {
  const Operator x = diag2(3.0, -4.0);
  CHECK(schatten_norm(x, 1.0).value == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(schatten_norm(x, 2.0).value == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(schatten_norm(x, kInfinity).value == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(schatten_norm(x, 3.0).value == doctest::Approx(std::cbrt(27.0 + 64.0)).epsilon(1e-14));

  const SchattenNorm quasi = schatten_norm(x, 0.5);
  CHECK_FALSE(quasi.is_norm);
  CHECK(quasi.value == doctest::Approx(std::pow(std::sqrt(3.0) + 2.0, 2.0)).epsilon(1e-13));
  CHECK(schatten_norm(x, 1.0).is_norm);
  CHECK_THROWS_AS(schatten_norm(x, 0.0), ValidationError);
  CHECK_THROWS_AS(schatten_norm(x, -1.0), ValidationError);
}

TEST_CASE("schatten_norm of a rank-one operator is the product of vector norms") {
  Rng rng(13);
  const Vector x = lcanon::testing::random_vector(rng, 4);
  const Vector y = lcanon::testing::random_vector(rng, 3);
  for (double p : {0.5, 1.0, 2.0, 3.0, kInfinity}) {
    CHECK(std::abs(schatten_norm(ket_bra(x, y), p) - x.norm() * y.norm()) <=
          1e-12 * x.norm() * y.norm());
  }
}

TEST_CASE("schatten 2-norm equals the Frobenius sum") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator x = lcanon::testing::random_operator(rng, 5, 4);
    double sum = 0.0;
    for (Index i = 0; i < x.rows(); ++i)
      for (Index j = 0; j < x.cols(); ++j) sum += std::norm(x(i, j));
    CHECK(std::abs(schatten_norm(x, 2.0) - std::sqrt(sum)) <= 1e-12 * std::sqrt(sum));
  }
}

TEST_CASE("trace and Hilbert-Schmidt inner product") {
  CHECK(trace(identity(3)) == Complex(3.0));
  Rng rng(15);
  const Vector x = lcanon::testing::random_vector(rng, 3);
  const Vector y = lcanon::testing::random_vector(rng, 3);
  CHECK(std::abs(trace(ket_bra(x, y)) - y.dot(x)) <= 1e-12);

  const Operator a = lcanon::testing::random_operator(rng, 4, 4);
  const Operator u = lcanon::testing::random_unitary(rng, 4);
  CHECK(std::abs(trace(u.adjoint() * a * u) - trace(a)) <= 1e-12);
  CHECK_THROWS_AS(trace(Operator::Zero(2, 3)), ValidationError);

  const Vector e0 = basis_vector(2, 0);
  const Vector e1 = basis_vector(2, 1);
  CHECK(hs_inner(ket_bra(e0, e0), ket_bra(e0, e1)) == Complex(0.0));
  CHECK(std::abs(hs_inner(a, a) - std::pow(schatten_norm(a, 2.0).value, 2)) <= 1e-11);
  CHECK(std::abs(hs_inner(kI * a, a) - (-kI) * hs_inner(a, a)) <= 1e-11);
  CHECK_THROWS_AS(hs_inner(a, Operator::Zero(3, 4)), ValidationError);

  const Operator f = lcanon::testing::random_unitary(rng, 3);
  const Operator g = lcanon::testing::random_unitary(rng, 3);
  for (Index k = 0; k < 3; ++k)
    for (Index j = 0; j < 3; ++j)
      for (Index m = 0; m < 3; ++m)
        for (Index n = 0; n < 3; ++n) {
          const Complex v = hs_inner(ket_bra(f.col(k), g.col(j)), ket_bra(f.col(m), g.col(n)));
          CHECK(std::abs(v - Complex((k == m && j == n) ? 1.0 : 0.0)) <= 1e-12);
        }
}

TEST_CASE("factor_split") {
  Operator d41 = diag2(4.0, 1.0);
  auto [y, z] = factor_split(d41, 2.0, 2.0);
  CHECK(max_abs(y - diag2(2.0, 1.0)) <= 1e-14);
  CHECK(max_abs(z - diag2(2.0, 1.0)) <= 1e-14);
  CHECK(max_abs(y * z - d41) <= 1e-14);

  auto [yi, zi] = factor_split(identity(3), 3.0, 1.5);
  CHECK(max_abs(yi - identity(3)) <= 1e-14);
  CHECK(max_abs(zi - identity(3)) <= 1e-14);

  Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator x = lcanon::testing::random_operator(rng, 3, 4);
    auto [a, b] = factor_split(x, 2.0, 2.0);
    CHECK(max_abs(a * b - x) <= 1e-12);
    CHECK(std::abs(schatten_norm(a, 2.0) * schatten_norm(b, 2.0) - schatten_norm(x, 1.0)) <= 1e-10);
    auto [c, e] = factor_split(x, 1.0, 4.0);
    CHECK(max_abs(c * e - x) <= 1e-12);
    // ||Y||_p ||Z||_q = ||X||_r when the split is taken in the Schmidt basis.
    const double r = 1.0 / (1.0 + 0.25);
    CHECK(std::abs(schatten_norm(c, 1.0) * schatten_norm(e, 4.0) - schatten_norm(x, r)) <= 1e-10);
  }
}

TEST_CASE("partial_trace_first") {
  Rng rng(17);
  const Operator rho = lcanon::testing::random_psd(rng, 2);
  const Operator sigma = lcanon::testing::random_operator(rng, 3, 3);
  CHECK(max_abs(partial_trace_first(kron(rho, sigma), 2, 3) - rho.trace() * sigma) <= 1e-12);

  const Operator g1 = ket_bra(basis_vector(2, 0), basis_vector(2, 0));
  CHECK(max_abs(partial_trace_first(kron(g1, sigma), 2, 3) - sigma) <= 1e-15);

  const Operator a = lcanon::testing::random_operator(rng, 6, 6);
  const Operator t = partial_trace_first(a, 2, 3);
  CHECK(std::abs(t.trace() - a.trace()) <= 1e-12);
  for (Index p = 0; p < 3; ++p) {
    for (Index q = 0; q < 3; ++q) {
      const Operator unit = ket_bra(basis_vector(3, p), basis_vector(3, q));
      CHECK(std::abs((t * unit).trace() - (a * kron(identity(2), unit)).trace()) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(partial_trace_first(a, 4, 2), ValidationError);
}

TEST_CASE("block_truncate") {
  Operator a = Operator::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  a(2, 2) = 0.25;
  const Operator t = block_truncate(a, {0, 1}, {0, 1}, identity(3), identity(3));
  Operator expected = a;
  expected(2, 2) = 0.0;
  CHECK(max_abs(t - expected) == 0.0);
  CHECK(schatten_norm(a - t, 1.0).value == doctest::Approx(0.25).epsilon(1e-14));

  Rng rng(18);
  const Operator f = lcanon::testing::random_unitary(rng, 3);
  const Operator g = lcanon::testing::random_unitary(rng, 3);
  CHECK(max_abs(block_truncate(a, {0, 1, 2}, {0, 1, 2}, f, g) - a) <= 1e-14);
  CHECK_THROWS_AS(block_truncate(a, {3}, {0}, f, g), ValidationError);
  CHECK_THROWS_AS(block_truncate(a, {0}, {-1}, f, g), ValidationError);

  const Operator big = lcanon::testing::random_decaying(rng, 6);
  const SchmidtDecomposition sd = svd_schmidt(big);
  for (double p : {1.0, 2.0, kInfinity}) {
    double previous = kInfinity;
    std::vector<Index> chain;
    for (Index n = 1; n <= 6; ++n) {
      chain.push_back(n - 1);
      const double err =
          schatten_norm(big - block_truncate(big, chain, chain, sd.left_vectors, sd.right_vectors), p);
      CHECK(err <= previous + 1e-12);
      previous = err;
    }
    CHECK(previous <= 1e-12);
  }
}

TEST_CASE("Schatten inequalities on random operators") {
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = rng.integer(2, 5);
    const Operator x = lcanon::testing::random_operator(rng, d, d);
    const Operator y = lcanon::testing::random_operator(rng, d, d);
    const Operator z = lcanon::testing::random_operator(rng, d, d);
    CHECK(schatten_norm(x * y, 1.0) <= schatten_norm(x, 2.0) * schatten_norm(y, 2.0) + 1e-10);
    CHECK(schatten_norm(x * y, 2.0) <= schatten_norm(x, 4.0) * schatten_norm(y, 4.0) + 1e-10);
    CHECK(schatten_norm(x, 3.0) <= schatten_norm(x, 1.5) + 1e-12);
    CHECK(schatten_norm(x * y * z, 2.0) <=
          schatten_norm(x, kInfinity) * schatten_norm(y, 2.0) * schatten_norm(z, kInfinity) + 1e-10);
  }
}
