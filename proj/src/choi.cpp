#include "lcanon/choi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "lcanon/errors.hpp"
#include "lcanon/schatten.hpp"

namespace lcanon {

namespace {

constexpr double kUnitaryTol = 1e-12;

// Unweighted Choi operator in the standard basis:
// C[(j, a), (k, b)] = Phi(|j><k|)_{ab}.
Operator reshuffle_to_choi(const Operator& m, Index din, Index dout) {
  Operator c(din * dout, din * dout);
  for (Index j = 0; j < din; ++j) {
    for (Index k = 0; k < din; ++k) {
      for (Index a = 0; a < dout; ++a) {
        for (Index b = 0; b < dout; ++b) {
          c(j * dout + a, k * dout + b) = m(b * dout + a, k * din + j);
        }
      }
    }
  }
  return c;
}

Operator reshuffle_from_choi(const Operator& c, Index din, Index dout) {
  Operator m(dout * dout, din * din);
  for (Index j = 0; j < din; ++j) {
    for (Index k = 0; k < din; ++k) {
      for (Index a = 0; a < dout; ++a) {
        for (Index b = 0; b < dout; ++b) {
          m(b * dout + a, k * din + j) = c(j * dout + a, k * dout + b);
        }
      }
    }
  }
  return m;
}

}  // namespace

WeightedBasis::WeightedBasis(Vector weights, std::string rule)
    : WeightedBasis(Operator::Identity(weights.size(), weights.size()), Vector(weights),
                    std::move(rule)) {}

WeightedBasis::WeightedBasis(Operator basis, Vector weights, std::string rule)
    : basis_(std::move(basis)), weights_(std::move(weights)), rule_(std::move(rule)) {
  const Index d = weights_.size();
  if (d == 0) throw ValidationError("WeightedBasis: dimension must be positive");
  if (basis_.rows() != d || basis_.cols() != d) {
    throw ValidationError("WeightedBasis: basis must be " + std::to_string(d) + "x" +
                          std::to_string(d));
  }
  require_finite(basis_, "WeightedBasis basis");
  require_finite(weights_, "WeightedBasis weights");
  if (max_abs(basis_.adjoint() * basis_ - Operator::Identity(d, d)) > kUnitaryTol * d) {
    throw ValidationError("WeightedBasis: basis is not unitary");
  }
  for (Index j = 0; j < d; ++j) {
    if (weights_(j) == Complex(0.0)) all_nonzero_ = false;
  }
}

WeightedBasis WeightedBasis::uniform(Index d) {
  return WeightedBasis(Vector::Ones(d), "uniform");
}

bool WeightedBasis::is_standard_basis() const {
  return basis_ == Operator::Identity(dim(), dim());
}

Operator WeightedBasis::reference() const {
  return basis_ * weights_.asDiagonal() * basis_.adjoint();
}

Vector entangled_vector(const WeightedBasis& wb) {
  const Index d = wb.dim();
  Vector gamma = Vector::Zero(d * d);
  for (Index j = 0; j < d; ++j) {
    const Vector g = wb.column(j);
    gamma += std::conj(wb.weights()(j)) * kron(g, g);
  }
  return gamma;
}

ChoiOperator choi_map(const SuperOperator& phi, const WeightedBasis& wb) {
  if (phi.dim_in != wb.dim()) {
    throw ValidationError("choi_map: map acts on dimension " + std::to_string(phi.dim_in) +
                          ", weighted basis has dimension " + std::to_string(wb.dim()));
  }
  const Index din = phi.dim_in;
  const Index dout = phi.dim_out;
  if (wb.is_standard_basis()) {
    const Operator weighted = wb.weights().conjugate().asDiagonal() *
                              Operator::Identity(din, din);
    const Operator lift = kron(weighted, Operator::Identity(dout, dout));
    return {din, dout, lift * reshuffle_to_choi(phi.matrix, din, dout) * lift.adjoint()};
  }
  // Phi(|g_j><g_k|) = (Phi o G(.)G*)(|j><k|), and the outer factor carries
  // G diag(conj(lambda)) on the input leg.
  const Operator& g = wb.basis();
  const Operator rotated = phi.matrix * kron(g.conjugate(), g);
  const Operator lift = kron(g * wb.weights().conjugate().asDiagonal(),
                             Operator::Identity(dout, dout));
  return {din, dout, lift * reshuffle_to_choi(rotated, din, dout) * lift.adjoint()};
}

SuperOperator choi_inverse(const ChoiOperator& c, const WeightedBasis& wb) {
  if (!wb.all_nonzero()) {
    throw PreconditionError(
        "choi_inverse: every weight lambda_j must be nonzero for the weighted Choi map "
        "to be invertible");
  }
  if (c.dim_in != wb.dim() || c.matrix.rows() != c.dim_in * c.dim_out ||
      c.matrix.cols() != c.dim_in * c.dim_out) {
    throw ValidationError("choi_inverse: Choi operator shape does not match the basis");
  }
  const Index din = c.dim_in;
  const Index dout = c.dim_out;
  const Operator& g = wb.basis();
  const Vector inv_weights = wb.weights().conjugate().cwiseInverse();
  const Operator unlift = kron(inv_weights.asDiagonal() * g.adjoint(),
                               Operator::Identity(dout, dout));
  const Operator standard = unlift * c.matrix * unlift.adjoint();
  Operator m = reshuffle_from_choi(standard, din, dout);
  if (!wb.is_standard_basis()) m = m * kron(g.transpose(), g.adjoint());
  return {din, dout, std::move(m)};
}

Vector vectorize(const Operator& x, const WeightedBasis& wb) {
  if (x.cols() != wb.dim()) {
    throw ValidationError("vectorize: operator has " + std::to_string(x.cols()) +
                          " columns, basis dimension is " + std::to_string(wb.dim()));
  }
  if (wb.is_standard_basis()) return vec(x);
  // sum_j g_j (x) X g_j = vec(X G G^T)
  const Operator& g = wb.basis();
  return vec(x * g * g.transpose());
}

Complex weighted_trace_via_choi(const SuperOperator& phi, const WeightedBasis& wb,
                                const Operator& x, const Operator& y) {
  if (x.rows() != wb.dim() || y.rows() != wb.dim() || x.cols() != wb.dim() ||
      y.cols() != wb.dim() || phi.dim_out != wb.dim()) {
    throw ValidationError("weighted_trace_via_choi: shape mismatch");
  }
  const ChoiOperator c = choi_map(phi, wb);
  return vectorize(x, wb).dot(c.matrix * vectorize(y, wb));
}

KernelWitness kernel_witness(const WeightedBasis& wb, Index j, const Operator& z) {
  if (j < 0 || j >= wb.dim()) {
    throw ValidationError("kernel_witness: index " + std::to_string(j) + " out of range");
  }
  if (wb.weights()(j) != Complex(0.0)) {
    throw PreconditionError("kernel_witness: weight lambda_" + std::to_string(j) +
                            " must vanish");
  }
  require_square(z, "kernel_witness Z");
  require_finite(z, "kernel_witness Z");
  if (max_abs(z) == 0.0) throw PreconditionError("kernel_witness: Z must be nonzero");

  const Vector g = wb.column(j);
  const Operator projector = ket_bra(g, g);
  // <g_j, X g_j> = vec(P^T)^T vec(X)
  Operator m = vec(z) * vec(projector.transpose()).transpose();
  SuperOperator map(wb.dim(), z.rows(), std::move(m));
  const double norm = schatten_norm(choi_map(map, wb).matrix, 2.0);
  return {std::move(map), norm};
}

WeightRule WeightRule::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError("weight rule '" + text + "' must look like geometric:r or power:p");
  }
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  char* end = nullptr;
  const double parameter = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(parameter)) {
    throw ValidationError("weight rule '" + text + "': bad parameter '" + value + "'");
  }
  WeightRule rule;
  rule.parameter = parameter;
  if (kind == "geometric") {
    rule.kind = Kind::geometric;
    if (!(parameter > 0.0 && parameter < 1.0)) {
      throw ValidationError("geometric weight ratio must lie in (0, 1)");
    }
  } else if (kind == "power") {
    rule.kind = Kind::power;
    if (!(parameter > 1.0)) {
      throw ValidationError("power weight exponent must exceed 1 for summability");
    }
  } else {
    throw ValidationError("unknown weight rule '" + kind + "'");
  }
  return rule;
}

double WeightRule::weight(Index j) const {
  const double jd = static_cast<double>(j);
  return kind == Kind::geometric ? std::pow(parameter, jd) : std::pow(jd, -parameter);
}

std::string WeightRule::name() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s:%.17g",
                kind == Kind::geometric ? "geometric" : "power", parameter);
  return buf;
}

std::vector<WitnessRow> surjectivity_witness(const WeightRule& rule,
                                             const std::vector<Index>& dims) {
  std::vector<WitnessRow> rows;
  rows.reserve(dims.size());
  Index previous = 0;
  double running_max = 0.0;
  Index scanned = 0;
  for (Index d : dims) {
    if (d < 1 || d <= previous) {
      throw ValidationError("surjectivity_witness: dimensions must be positive and ascending");
    }
    previous = d;
    for (Index j = scanned + 1; j <= d; ++j) {
      const double lambda = rule.weight(j);
      if (lambda == 0.0) {
        throw ValidationError("surjectivity_witness: weight rule yields lambda_" +
                              std::to_string(j) + " = 0");
      }
      const double scaled = static_cast<double>(j) * std::abs(lambda);
      running_max = std::max(running_max, 1.0 / (scaled * scaled));
    }
    scanned = d;
    rows.push_back({d, running_max});
  }
  return rows;
}

}  // namespace lcanon
