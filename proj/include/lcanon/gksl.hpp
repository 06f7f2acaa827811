#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcanon/kraus.hpp"
#include "lcanon/linalg.hpp"
#include "lcanon/superop.hpp"

namespace lcanon {

enum class GeneratorClass { cp_semigroup, cptp_semigroup, unknown };

struct Generator {
  SuperOperator superop;
  GeneratorClass claimed_class = GeneratorClass::unknown;

  Index dim() const { return superop.dim_in; }
};

// Tolerances shared by extraction, canonicalization and verification.
struct Tolerances {
  double eq = 1e-10;     // Hermiticity of inputs
  double psd = 1e-9;     // eigenvalue floor for PSD checks
  double recon = 1e-9;   // reconstruction and domain residuals
  double rank = 1e-12;   // relative Kraus rank cutoff
};

// A pair (K, Phi) with L = K(.) + (.)K* + Phi.
struct CpDecomposition {
  Operator k;
  KrausSet kraus;
};

// L = K(.) + (.)K* + Phi.
Generator build_cp_generator(const Operator& k, const KrausSet& ks);

// L = -i[H,.] + Phi - {Phi*(1)/2, .}; H must be Hermitian.
Generator build_gksl_generator(const Operator& h, const KrausSet& ks,
                               double herm_tol = 1e-10);

// Heisenberg-picture form -i[H,.] + Phi - {Phi(1)/2, .}, the shape of the
// dual of a GKSL generator.
SuperOperator build_heisenberg_generator(const Operator& h, const KrausSet& ks);

// Some decomposition of a Hermiticity-preserving generator: the Choi operator
// compressed off the maximally entangled vector gives Phi_0, and K_0 (with
// tr K_0 real) is read off the remainder. Throws NotCpGeneratorError when the
// compressed Choi operator is not PSD and InconsistentGeneratorError when the
// remainder is not of the form K(.) + (.)K*.
CpDecomposition extract_initial_decomposition(const Generator& l,
                                              const Tolerances& tol = {});

enum class DecompositionMode { cp, cptp };

struct CanonicalDecomposition {
  DecompositionMode mode = DecompositionMode::cp;
  Operator k;
  std::optional<Operator> h;  // cptp mode only
  KrausSet phi;
  Operator reference;
  std::map<std::string, double> residuals;
};

// Shift of the Kraus operators into CP_B: V_j -> V_j - (tr(B*V_j)/tr(B*)) 1,
// with the compensating K. Leaves the generator unchanged; tr(B*K) may still
// have an imaginary part.
CpDecomposition shift_into_cp_b(const CpDecomposition& initial, const Operator& b,
                                double rank_tol = 1e-12);

// K - i (Im tr(B*K) / Re tr(B)) 1.
Operator fix_trace_gauge(const Operator& k, const Operator& b);

// Throws PreconditionError unless |Re tr(B)| > 1e-12 ||B||_1.
void require_admissible_reference(const Operator& b);

// The unique (K, Phi) with Phi in CP_B and Im tr(B*K) = 0.
CanonicalDecomposition canonicalize(const Generator& l, const Operator& b,
                                    const Tolerances& tol = {});
CanonicalDecomposition canonicalize(const CpDecomposition& initial, const Operator& b,
                                    const Tolerances& tol = {});

// GKSL form: H = i (K + Phi*(1)/2) from the canonical K.
CanonicalDecomposition canonicalize_cptp(const Generator& l, const Operator& b,
                                         const Tolerances& tol = {});

struct ResidualCheck {
  enum class Bound { at_most, at_least };

  std::string name;
  double value;
  double tolerance;  // limit on value; a floor when bound is at_least
  Bound bound = Bound::at_most;
  bool asserted = true;  // reported-only checks never fail the report

  bool pass() const {
    if (!asserted) return true;
    return bound == Bound::at_most ? value <= tolerance : value >= tolerance;
  }
};

struct VerificationReport {
  std::vector<ResidualCheck> checks;
  bool pass() const;
  std::optional<double> value(const std::string& name) const;
};

VerificationReport verify_canonical(const CanonicalDecomposition& cd, const Generator& l,
                                    const Tolerances& tol = {});

// (-H, {V_j*}), the decomposition of the dual generator L*.
std::pair<Operator, KrausSet> dual_generator(const CanonicalDecomposition& cd);

}  // namespace lcanon
