#include "lcanon/superop.hpp"

#include <algorithm>
#include <string>

#include "lcanon/errors.hpp"

namespace lcanon {

namespace {

// Image of the matrix unit |row><col| under phi.
Operator unit_image(const SuperOperator& phi, Index row, Index col) {
  return unvec(phi.matrix.col(col * phi.dim_in + row), phi.dim_out, phi.dim_out);
}

}  // namespace

SuperOperator::SuperOperator(Index din, Index dout, Operator m)
    : dim_in(din), dim_out(dout), matrix(std::move(m)) {
  if (din <= 0 || dout <= 0 || matrix.rows() != dout * dout || matrix.cols() != din * din) {
    throw ValidationError("SuperOperator: matrix is " + std::to_string(matrix.rows()) + "x" +
                          std::to_string(matrix.cols()) + ", expected " +
                          std::to_string(dout * dout) + "x" + std::to_string(din * din));
  }
}

SuperOperator SuperOperator::identity(Index d) {
  return {d, d, Operator::Identity(d * d, d * d)};
}

SuperOperator SuperOperator::zero(Index din, Index dout) {
  return {din, dout, Operator::Zero(dout * dout, din * din)};
}

Operator apply(const SuperOperator& phi, const Operator& x) {
  if (x.rows() != phi.dim_in || x.cols() != phi.dim_in) {
    throw ValidationError("apply: operator is " + std::to_string(x.rows()) + "x" +
                          std::to_string(x.cols()) + ", map expects " +
                          std::to_string(phi.dim_in) + "x" + std::to_string(phi.dim_in));
  }
  return unvec(phi.matrix * vec(x), phi.dim_out, phi.dim_out);
}

SuperOperator from_left_right(const Operator& a, const Operator& b) {
  // X -> A X B with X square of size a.cols() = b.rows().
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw ValidationError("from_left_right: shapes of A (" + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ") and B (" + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()) + ") do not compose");
  }
  return {a.cols(), a.rows(), kron(b.transpose(), a)};
}

SuperOperator compose(const SuperOperator& phi, const SuperOperator& psi) {
  if (psi.dim_out != phi.dim_in) throw ValidationError("compose: dimension mismatch");
  return {psi.dim_in, phi.dim_out, phi.matrix * psi.matrix};
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
  if (a.dim_in != b.dim_in || a.dim_out != b.dim_out) {
    throw ValidationError("superoperator sum: dimension mismatch");
  }
  return {a.dim_in, a.dim_out, a.matrix + b.matrix};
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
  return a + Complex(-1.0) * b;
}

SuperOperator operator*(Complex c, const SuperOperator& a) {
  return {a.dim_in, a.dim_out, c * a.matrix};
}

SuperOperator dual(const SuperOperator& phi) {
  const Index di = phi.dim_in;
  const Index dout = phi.dim_out;
  Operator n(di * di, dout * dout);
  // Phi*(B)_{kl} = sum_{r,c} M[(c,r), (k,l)] B_{cr} in vec index notation.
  for (Index k = 0; k < di; ++k) {
    for (Index l = 0; l < di; ++l) {
      for (Index r = 0; r < dout; ++r) {
        for (Index c = 0; c < dout; ++c) {
          n(l * di + k, r * dout + c) = phi.matrix(c * dout + r, k * di + l);
        }
      }
    }
  }
  return {dout, di, std::move(n)};
}

SuperOperator tensor_lift(const SuperOperator& phi, Index n) {
  if (n < 1) throw ValidationError("tensor_lift: n must be positive");
  if (n == 1) return phi;
  const Index di = phi.dim_in;
  const Index dout = phi.dim_out;
  const Index big_in = n * di;
  const Index big_out = n * dout;
  Operator m = Operator::Zero(big_out * big_out, big_in * big_in);
  // Block (j, k) of the input maps to block (j, k) of the output.
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      for (Index b = 0; b < di; ++b) {
        for (Index a = 0; a < di; ++a) {
          const Index col = (k * di + b) * big_in + (j * di + a);
          for (Index bo = 0; bo < dout; ++bo) {
            for (Index ao = 0; ao < dout; ++ao) {
              m((k * dout + bo) * big_out + (j * dout + ao), col) =
                  phi.matrix(bo * dout + ao, b * di + a);
            }
          }
        }
      }
    }
  }
  return {big_in, big_out, std::move(m)};
}

SuperOperator sandwich(const SuperOperator& phi, const Operator& b) {
  if (b.rows() != phi.dim_in || b.cols() != phi.dim_in) {
    throw ValidationError("sandwich: B must be " + std::to_string(phi.dim_in) + "x" +
                          std::to_string(phi.dim_in));
  }
  return {phi.dim_in, phi.dim_out, phi.matrix * kron(b.transpose(), b.adjoint())};
}

Complex superop_trace(const SuperOperator& phi) {
  if (!phi.is_square()) throw ValidationError("superop_trace: map must be square");
  return phi.matrix.trace();
}

double hermiticity_preservation_defect(const SuperOperator& phi) {
  double worst = 0.0;
  for (Index j = 0; j < phi.dim_in; ++j) {
    for (Index k = j; k < phi.dim_in; ++k) {
      const Operator forward = unit_image(phi, j, k);
      const Operator backward = unit_image(phi, k, j);
      worst = std::max(worst, max_abs(backward - forward.adjoint()));
    }
  }
  return worst;
}

}  // namespace lcanon
