#pragma once

#include "lcanon/linalg.hpp"

namespace lcanon {

// Linear map on operators, stored so that vec(Phi(X)) = matrix * vec(X)
// under column stacking. The matrix of X -> A X B is B^T (x) A.
struct SuperOperator {
  Index dim_in = 0;
  Index dim_out = 0;
  Operator matrix;  // (dim_out^2) x (dim_in^2)

  SuperOperator() = default;
  SuperOperator(Index din, Index dout, Operator m);

  static SuperOperator identity(Index d);
  static SuperOperator zero(Index din, Index dout);

  bool is_square() const { return dim_in == dim_out; }
};

Operator apply(const SuperOperator& phi, const Operator& x);

// X -> A X B.
SuperOperator from_left_right(const Operator& a, const Operator& b);

// phi o psi.
SuperOperator compose(const SuperOperator& phi, const SuperOperator& psi);

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(Complex c, const SuperOperator& a);

// Dual w.r.t. the trace pairing: tr(Phi(A) B) = tr(A Phi*(B)).
SuperOperator dual(const SuperOperator& phi);

// id_n (x) Phi acting blockwise on n x n block operators.
SuperOperator tensor_lift(const SuperOperator& phi, Index n);

// Phi(B* (.) B).
SuperOperator sandwich(const SuperOperator& phi, const Operator& b);

// Trace of the superoperator as an operator on Hilbert-Schmidt space.
Complex superop_trace(const SuperOperator& phi);

// Largest absolute deviation of Phi(X*) from Phi(X)* over matrix units.
double hermiticity_preservation_defect(const SuperOperator& phi);

}  // namespace lcanon
