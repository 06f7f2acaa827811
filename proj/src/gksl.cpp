#include "lcanon/gksl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lcanon/choi.hpp"
#include "lcanon/errors.hpp"
#include "lcanon/schatten.hpp"

namespace lcanon {

namespace {

constexpr double kExtractionResidualTol = 1e-8;
constexpr double kReferenceGuard = 1e-12;

Complex tr_adjoint_product(const Operator& b, const Operator& x) {
  // tr(B* X)
  return b.conjugate().cwiseProduct(x).sum();
}

void check_kraus_shape(const Operator& k, const KrausSet& ks, const char* who) {
  require_square(k, who);
  require_finite(k, who);
  if (!ks.empty() && (ks.dim_in != k.rows() || ks.dim_out != k.rows())) {
    throw ValidationError(std::string(who) + ": Kraus operators must be " +
                          std::to_string(k.rows()) + "x" + std::to_string(k.rows()));
  }
}

KrausSet with_dims(const KrausSet& ks, Index d) {
  if (!ks.empty()) return ks;
  KrausSet out(d, d);
  out.eigenvalues = ks.eigenvalues;
  return out;
}

SuperOperator left_right_part(const Operator& k) {
  const Index d = k.rows();
  const Operator id = Operator::Identity(d, d);
  return {d, d, kron(id, k) + kron(k.conjugate(), id)};
}

bool is_self_adjoint(const Operator& b, double tol) {
  return hermiticity_defect(b) <= tol * std::max(1.0, max_abs(b));
}

CanonicalDecomposition canonical_core(const CpDecomposition& initial, const Operator& b,
                                      const Tolerances& tol) {
  const CpDecomposition shifted = shift_into_cp_b(initial, b, tol.rank);
  CanonicalDecomposition cd;
  cd.mode = DecompositionMode::cp;
  cd.k = fix_trace_gauge(shifted.k, b);
  cd.phi = shifted.kraus;
  cd.reference = b;
  return cd;
}

void record(CanonicalDecomposition& cd, const VerificationReport& report) {
  cd.residuals.clear();
  for (const ResidualCheck& c : report.checks) cd.residuals[c.name] = c.value;
}

}  // namespace

Generator build_cp_generator(const Operator& k, const KrausSet& ks) {
  check_kraus_shape(k, ks, "build_cp_generator");
  SuperOperator l = left_right_part(k);
  if (!ks.empty()) l.matrix += superop_from_kraus(ks).matrix;
  return {std::move(l), GeneratorClass::cp_semigroup};
}

Generator build_gksl_generator(const Operator& h, const KrausSet& ks, double herm_tol) {
  check_kraus_shape(h, ks, "build_gksl_generator");
  if (hermiticity_defect(h) > herm_tol) {
    throw ValidationError("build_gksl_generator: H is not Hermitian");
  }
  const Operator k = -kI * h - 0.5 * with_dims(ks, h.rows()).gram();
  Generator l = build_cp_generator(k, ks);
  l.claimed_class = GeneratorClass::cptp_semigroup;
  return l;
}

SuperOperator build_heisenberg_generator(const Operator& h, const KrausSet& ks) {
  check_kraus_shape(h, ks, "build_heisenberg_generator");
  Operator unit_image = Operator::Zero(h.rows(), h.rows());
  for (const Operator& v : ks.operators) unit_image += v * v.adjoint();
  return build_cp_generator(-kI * h - 0.5 * unit_image, ks).superop;
}

CpDecomposition extract_initial_decomposition(const Generator& l, const Tolerances& tol) {
  const SuperOperator& m = l.superop;
  if (!m.is_square()) {
    throw ValidationError("extract_initial_decomposition: generator must be square");
  }
  require_finite(m.matrix, "generator");
  const Index d = m.dim_in;
  const double scale = std::max(1.0, max_abs(m.matrix));
  if (hermiticity_preservation_defect(m) > tol.eq * scale) {
    throw NotCpGeneratorError(
        "not a CP-semigroup generator: the map does not preserve Hermiticity");
  }

  const ChoiOperator c = choi_map(m, WeightedBasis::uniform(d));
  const Vector gamma = vec(Operator::Identity(d, d));
  const Vector gamma_hat = gamma / std::sqrt(static_cast<double>(d));
  const Operator complement =
      Operator::Identity(d * d, d * d) - gamma_hat * gamma_hat.adjoint();
  Operator compressed = complement * c.matrix * complement;
  compressed = 0.5 * (compressed + compressed.adjoint());

  Eigen::SelfAdjointEigenSolver<Operator> es(compressed, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("extract_initial_decomposition: eigendecomposition failed");
  }
  const double min_eig = es.eigenvalues().minCoeff();
  const double floor = -tol.psd * std::max(scale, std::abs(compressed.trace()));
  if (min_eig < floor) {
    throw NotCpGeneratorError(
        "not a CP-semigroup generator: compressed Choi operator has eigenvalue " +
        std::to_string(min_eig));
  }

  // Roundoff in the compression is relative to C, not to C0.
  const double cut = tol.rank * std::max(1.0, max_abs(c.matrix) * static_cast<double>(d));
  const double top = es.eigenvalues().maxCoeff();
  CpDecomposition out;
  out.kraus = KrausSet(d, d);
  if (top > cut) {
    out.kraus = kraus_from_choi({d, d, compressed}, WeightedBasis::uniform(d),
                                std::max(tol.rank, cut / top), std::max(tol.psd, -floor));
  }
  const SuperOperator remainder = m - superop_from_kraus(out.kraus);

  // The remainder's Choi operator is (1 (x) K)|Gamma><Gamma| + h.c.; with tr K
  // real, C Gamma = d vec(K) + tr(K) Gamma.
  const Operator cr = choi_map(remainder, WeightedBasis::uniform(d)).matrix;
  const Vector w = cr * gamma;
  const double tr_k = gamma.dot(w).real() / (2.0 * static_cast<double>(d));
  out.k = (unvec(w, d, d) - tr_k * Operator::Identity(d, d)) / static_cast<double>(d);

  const double residual = max_abs(remainder.matrix - left_right_part(out.k).matrix);
  if (residual > kExtractionResidualTol * scale) {
    throw InconsistentGeneratorError(
        "inconsistent generator: remainder is not of the form K(.) + (.)K*, residual " +
        std::to_string(residual));
  }
  return out;
}

void require_admissible_reference(const Operator& b) {
  require_square(b, "reference B");
  require_finite(b, "reference B");
  const double b1 = schatten_norm(b, 1.0);
  const double re_tr = b.trace().real();
  if (!(std::abs(re_tr) > kReferenceGuard * b1)) {
    throw PreconditionError(
        "reference operator violates the hypothesis Re(tr(B)) != 0 (Re tr(B) = " +
        std::to_string(re_tr) + ")");
  }
}

CpDecomposition shift_into_cp_b(const CpDecomposition& initial, const Operator& b,
                                double rank_tol) {
  const Index d = initial.k.rows();
  check_kraus_shape(initial.k, initial.kraus, "shift_into_cp_b");
  if (b.rows() != d || b.cols() != d) {
    throw ValidationError("shift_into_cp_b: reference must be " + std::to_string(d) + "x" +
                          std::to_string(d));
  }
  const Complex tr_b = b.trace();
  if (!(std::abs(tr_b) > kReferenceGuard * schatten_norm(b, 1.0))) {
    throw PreconditionError("shift_into_cp_b: tr(B) must be nonzero");
  }
  const Complex tr_b_adj = std::conj(tr_b);
  const Operator id = Operator::Identity(d, d);

  double largest = 0.0;
  for (const Operator& v : initial.kraus.operators) largest = std::max(largest, v.squaredNorm());

  CpDecomposition out;
  out.k = initial.k;
  out.kraus = KrausSet(d, d);
  double v_norm_sq = 0.0;
  for (const Operator& v : initial.kraus.operators) {
    const Complex v_j = tr_adjoint_product(b, v);
    const Complex c_j = v_j / tr_b_adj;
    v_norm_sq += std::norm(v_j);
    out.k += std::conj(c_j) * v;
    Operator shifted = v - c_j * id;
    if (shifted.squaredNorm() > rank_tol * largest) out.kraus.operators.push_back(std::move(shifted));
  }
  out.k -= (v_norm_sq / (2.0 * std::norm(tr_b))) * id;
  return out;
}

Operator fix_trace_gauge(const Operator& k, const Operator& b) {
  const double im = tr_adjoint_product(b, k).imag();
  const double re_tr_b = b.trace().real();
  return k - kI * (im / re_tr_b) * Operator::Identity(k.rows(), k.cols());
}

CanonicalDecomposition canonicalize(const Generator& l, const Operator& b,
                                    const Tolerances& tol) {
  require_admissible_reference(b);
  if (!l.superop.is_square() || b.rows() != l.dim()) {
    throw ValidationError("canonicalize: reference must be " + std::to_string(l.dim()) + "x" +
                          std::to_string(l.dim()));
  }
  CanonicalDecomposition cd = canonical_core(extract_initial_decomposition(l, tol), b, tol);
  record(cd, verify_canonical(cd, l, tol));
  return cd;
}

CanonicalDecomposition canonicalize(const CpDecomposition& initial, const Operator& b,
                                    const Tolerances& tol) {
  require_admissible_reference(b);
  const Generator l = build_cp_generator(initial.k, initial.kraus);
  CanonicalDecomposition cd = canonical_core(initial, b, tol);
  record(cd, verify_canonical(cd, l, tol));
  return cd;
}

CanonicalDecomposition canonicalize_cptp(const Generator& l, const Operator& b,
                                         const Tolerances& tol) {
  require_admissible_reference(b);
  if (!l.superop.is_square()) throw ValidationError("canonicalize_cptp: generator must be square");
  const Index d = l.dim();
  const double scale = std::max(1.0, max_abs(l.superop.matrix));
  const double tp_defect = max_abs(lcanon::apply(dual(l.superop), Operator::Identity(d, d)));
  if (tp_defect > tol.recon * scale) {
    throw ValidationError("canonicalize_cptp: generator is not trace-preserving (||L*(1)|| = " +
                          std::to_string(tp_defect) + ")");
  }
  CanonicalDecomposition cd = canonicalize(l, b, tol);
  Operator h = kI * (cd.k + 0.5 * with_dims(cd.phi, d).gram());
  const double defect = hermiticity_defect(h);
  if (defect > tol.recon * std::max(1.0, max_abs(cd.k))) {
    throw InconsistentGeneratorError(
        "canonicalize_cptp: H is not Hermitian (defect " + std::to_string(defect) +
        "), generator is not of GKSL form");
  }
  cd.h = 0.5 * (h + h.adjoint());
  cd.mode = DecompositionMode::cptp;
  record(cd, verify_canonical(cd, l, tol));
  return cd;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ResidualCheck& c) { return c.pass(); });
}

std::optional<double> VerificationReport::value(const std::string& name) const {
  for (const ResidualCheck& c : checks) {
    if (c.name == name) return c.value;
  }
  return std::nullopt;
}

VerificationReport verify_canonical(const CanonicalDecomposition& cd, const Generator& l,
                                    const Tolerances& tol) {
  const Index d = cd.k.rows();
  if (!l.superop.is_square() || l.dim() != d || cd.reference.rows() != d ||
      cd.reference.cols() != d) {
    throw ValidationError("verify_canonical: decomposition and generator dimensions differ");
  }
  const KrausSet phi = with_dims(cd.phi, d);
  const Operator& b = cd.reference;
  const double scale = std::max(1.0, max_abs(l.superop.matrix));
  const double b1 = schatten_norm(b, 1.0);
  const bool cptp = cd.mode == DecompositionMode::cptp;
  if (cptp && !cd.h) throw ValidationError("verify_canonical: cptp decomposition lacks H");

  VerificationReport report;
  using Bound = ResidualCheck::Bound;

  Generator rebuilt;
  if (cptp) {
    rebuilt = build_gksl_generator(*cd.h, phi, kInfinity);
  } else {
    rebuilt = build_cp_generator(cd.k, phi);
  }
  report.checks.push_back({"reconstruction", max_abs(rebuilt.superop.matrix - l.superop.matrix),
                           tol.recon * scale});

  const double k_inf = schatten_norm(cd.k, kInfinity);
  report.checks.push_back({"im_tr_BK", std::abs(tr_adjoint_product(b, cd.k).imag()),
                           tol.recon * std::max(1.0, b1 * k_inf)});

  const double wt = weighted_trace_via_kraus(phi, b).value;
  report.checks.push_back(
      {"weighted_trace", wt, tol.recon * (1.0 + weighted_trace_bound(phi, b))});

  const ChoiOperator choi = choi_map(superop_from_kraus(phi), WeightedBasis::uniform(d));
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (choi.matrix + choi.matrix.adjoint()),
                                             Eigen::EigenvaluesOnly);
  report.checks.push_back({"cp_min_eigenvalue", es.eigenvalues().minCoeff(),
                           -psd_threshold(choi.matrix, tol.psd), Bound::at_least});

  if (cptp) {
    const Operator& h = *cd.h;
    const double h_inf = schatten_norm(h, kInfinity);
    report.checks.push_back(
        {"trace_preservation",
         max_abs(lcanon::apply(dual(l.superop), Operator::Identity(d, d))), tol.recon * scale});
    report.checks.push_back({"hermiticity_H", hermiticity_defect(h),
                             tol.recon * std::max(1.0, h_inf)});
    const double domain_tol = tol.recon * std::max(1.0, b1 * h_inf);
    if (is_self_adjoint(b, tol.eq)) {
      report.checks.push_back({"tr_BH", std::abs((b * h).trace()), domain_tol});
    }
    // Im tr(Phi(B)) = 2 Re tr(B* H) for general B; reported, not asserted.
    const Operator phi_b = lcanon::apply(superop_from_kraus(phi), b);
    const double gap =
        std::abs(phi_b.trace().imag() - 2.0 * tr_adjoint_product(b, h).real());
    report.checks.push_back({"general_b_domain_gap", gap, domain_tol, Bound::at_most, false});
  }
  return report;
}

std::pair<Operator, KrausSet> dual_generator(const CanonicalDecomposition& cd) {
  if (cd.mode != DecompositionMode::cptp || !cd.h) {
    throw ValidationError("dual_generator: requires a cptp-mode decomposition");
  }
  return {-*cd.h, with_dims(cd.phi, cd.k.rows()).adjoint()};
}

}  // namespace lcanon
