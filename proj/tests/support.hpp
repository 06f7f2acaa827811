#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "lcanon/gksl.hpp"
#include "lcanon/kraus.hpp"
#include "lcanon/linalg.hpp"
#include "lcanon/superop.hpp"

namespace lcanon::testing {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

private:
  std::mt19937_64 engine_;
};

inline Operator random_operator(Rng& rng, Index rows, Index cols, double scale = 1.0) {
  Operator x(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) x(i, j) = scale * rng.complex_normal();
  return x;
}

inline Vector random_vector(Rng& rng, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

// Haar-distributed unitary from the QR of a Ginibre matrix.
inline Operator random_unitary(Rng& rng, Index d) {
  const Operator g = random_operator(rng, d, d);
  Eigen::HouseholderQR<Operator> qr(g);
  Operator q = qr.householderQ() * Operator::Identity(d, d);
  const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) q.col(j) *= diag / std::abs(diag);
  }
  return q;
}

// m x n with orthonormal columns (m >= n).
inline Operator random_isometry(Rng& rng, Index m, Index n) {
  return random_unitary(rng, m).leftCols(n);
}

inline Operator random_hermitian(Rng& rng, Index d) {
  const Operator g = random_operator(rng, d, d);
  return 0.5 * (g + g.adjoint());
}

inline Operator random_psd(Rng& rng, Index d) {
  const Operator g = random_operator(rng, d, d);
  return g * g.adjoint();
}

inline KrausSet random_kraus(Rng& rng, Index d, Index count, double scale = 1.0) {
  std::vector<Operator> ops;
  for (Index j = 0; j < count; ++j) ops.push_back(random_operator(rng, d, d, scale));
  return {d, d, std::move(ops)};
}

inline SuperOperator random_superop(Rng& rng, Index din, Index dout) {
  return {din, dout, random_operator(rng, dout * dout, din * din)};
}

// Operator with singular values 2^{-j} in random bases.
inline Operator random_decaying(Rng& rng, Index d) {
  Vector s(d);
  for (Index j = 0; j < d; ++j) s(j) = std::pow(0.5, static_cast<double>(j));
  return random_unitary(rng, d) * s.asDiagonal() * random_unitary(rng, d).adjoint();
}

// Reference with |Re tr B| >= 0.1.
inline Operator random_reference(Rng& rng, Index d) {
  for (;;) {
    const Operator b = random_operator(rng, d, d);
    if (std::abs(b.trace().real()) >= 0.1) return b;
  }
}

// Mixes a Kraus set by an isometry W (count_out >= size): V'_i = sum_j W_ij V_j.
inline KrausSet mix_kraus(const KrausSet& ks, const Operator& w) {
  std::vector<Operator> mixed;
  for (Index i = 0; i < w.rows(); ++i) {
    Operator v = Operator::Zero(ks.dim_out, ks.dim_in);
    for (Index j = 0; j < w.cols(); ++j) v += w(i, j) * ks.operators[static_cast<std::size_t>(j)];
    mixed.push_back(std::move(v));
  }
  return {ks.dim_in, ks.dim_out, std::move(mixed)};
}

// Same L, different (K0, {V_j}): isometric mixing, V_j -> V_j + a_j 1, an
// extra sqrt(2c) 1 Kraus operator and K0 -> K0 + i theta 1 - c 1.
inline CpDecomposition regauge(Rng& rng, const CpDecomposition& in) {
  const Index d = in.k.rows();
  const Index n = static_cast<Index>(in.kraus.size());
  KrausSet mixed = mix_kraus(in.kraus, random_isometry(rng, n + 1, n));
  Operator k = in.k;
  for (Operator& v : mixed.operators) {
    const Complex a = rng.complex_normal();
    k -= std::conj(a) * v + 0.5 * std::norm(a) * identity(d);
    v += a * identity(d);
  }
  const double theta = rng.normal();
  const double c = rng.uniform(0.1, 1.0);
  k += Complex(-c, theta) * identity(d);
  mixed.operators.push_back(std::sqrt(2.0 * c) * identity(d));
  return {k, mixed};
}

// Roots of a monic polynomial x^n + c[n-1] x^{n-1} + ... + c[0] by
// Durand-Kerner iteration.
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  const std::size_t n = coeffs.size();
  auto eval = [&](Complex x) {
    Complex acc(1.0);
    for (std::size_t k = n; k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
  };
  std::vector<Complex> z(n);
  const Complex seed(0.4, 0.9);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(seed, static_cast<double>(k));
  for (int iter = 0; iter < 2000; ++iter) {
    for (std::size_t k = 0; k < n; ++k) {
      Complex denom(1.0);
      for (std::size_t m = 0; m < n; ++m)
        if (m != k) denom *= z[k] - z[m];
      z[k] -= eval(z[k]) / denom;
    }
  }
  return z;
}

}  // namespace lcanon::testing
