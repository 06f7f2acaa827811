#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace lcanon {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Dense complex operator. Rows/cols carry the dimension metadata; all
// entries are expected to be finite (see require_finite).
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Kronecker product A (x) B; index of (i, k) is i * B.rows() + k.
Operator kron(const Operator& a, const Operator& b);

// Column stacking, column index as the leading tensor factor.
Vector vec(const Operator& x);
Operator unvec(const Vector& v, Index rows, Index cols);

Operator identity(Index d);
Operator ket_bra(const Vector& x, const Vector& y);
Vector basis_vector(Index d, Index j);

void require_finite(const Operator& x, std::string_view what);
void require_square(const Operator& x, std::string_view what);

// Largest absolute entry.
double max_abs(const Operator& x);

// Largest absolute deviation from Hermiticity.
double hermiticity_defect(const Operator& x);

}  // namespace lcanon
