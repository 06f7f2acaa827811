#include "lcanon/linalg.hpp"

#include <limits>
#include <string>

#include "lcanon/errors.hpp"

namespace lcanon {

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Operator& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Operator unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw ValidationError("unvec: vector length " + std::to_string(v.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
  }
  return Eigen::Map<const Operator>(v.data(), rows, cols);
}

Operator identity(Index d) { return Operator::Identity(d, d); }

Operator ket_bra(const Vector& x, const Vector& y) { return x * y.adjoint(); }

Vector basis_vector(Index d, Index j) { return Vector::Unit(d, j); }

void require_finite(const Operator& x, std::string_view what) {
  if (!x.allFinite()) {
    throw ValidationError(std::string(what) + ": entries must be finite");
  }
}

void require_square(const Operator& x, std::string_view what) {
  if (x.rows() != x.cols()) {
    throw ValidationError(std::string(what) + ": operator must be square, got " +
                          std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

double max_abs(const Operator& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Operator& x) {
  if (x.rows() != x.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(x - x.adjoint());
}

}  // namespace lcanon
