#include "lcanon/cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "lcanon/choi.hpp"
#include "lcanon/cli/config.hpp"
#include "lcanon/cli/io.hpp"
#include "lcanon/errors.hpp"
#include "lcanon/gksl.hpp"
#include "lcanon/kraus.hpp"

namespace lcanon::cli {

namespace {

struct Options {
  ConfigFlags flags;
  std::string out_path;
  // canonicalize / verify
  std::string generator_path;
  std::string reference_path;
  std::string decomposition_path;
  std::string mode = "cp";
  // choi / kraus
  std::string map_path;
  std::string choi_path;
  std::string weights;
  Index dim_in = 0;
  Index dim_out = 0;
  // witness
  std::string rule;
  std::string dims;
};

void emit(const Json& j, const Options& opt, std::ostream& out) {
  const std::string text = dump_deterministic(j);
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot write '" + opt.out_path + "'");
  file << text;
}

Vector parse_weights(const std::string& text, Index d) {
  if (text.empty()) return Vector::Ones(d);
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--weights: '" + item + "' is not a number");
    }
  }
  if (static_cast<Index>(values.size()) != d) {
    throw ValidationError("--weights: expected " + std::to_string(d) + " values, got " +
                          std::to_string(values.size()));
  }
  Vector w(d);
  for (Index i = 0; i < d; ++i) w(i) = values[static_cast<std::size_t>(i)];
  return w;
}

std::vector<Index> parse_dims(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) return {static_cast<Index>(std::stoll(text))};
    const Index lo = std::stoll(text.substr(0, colon));
    const Index hi = std::stoll(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw ValidationError("--dims: need 1 <= a <= b in a:b");
    std::vector<Index> dims;
    for (Index d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  } catch (const std::logic_error&) {
    throw ValidationError("--dims: expected a:b, got '" + text + "'");
  }
}

RealVector hermitian_eigenvalues(const Operator& c) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return es.eigenvalues();
}

int cmd_canonicalize(const Options& opt, std::ostream& out) {
  const Config config = resolve_config(opt.flags);
  if (opt.mode != "cp" && opt.mode != "cptp") {
    throw ValidationError("--mode: expected cp or cptp, got '" + opt.mode + "'");
  }
  const Generator l = generator_from_json(read_json_file(opt.generator_path));
  const Operator b = operator_from_json(read_json_file(opt.reference_path), "reference");
  require_admissible_reference(b);
  if (b.rows() != l.dim() || b.cols() != l.dim()) {
    throw ValidationError("reference: must be " + std::to_string(l.dim()) + "x" +
                          std::to_string(l.dim()) + " to match the generator");
  }
  const Tolerances tol = config.tolerances();
  const CanonicalDecomposition cd =
      opt.mode == "cptp" ? canonicalize_cptp(l, b, tol) : canonicalize(l, b, tol);
  const VerificationReport report = verify_canonical(cd, l, tol);
  emit(decomposition_to_json(cd, report), opt, out);
  return report.pass() ? kExitOk : kExitNumerical;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const Config config = resolve_config(opt.flags);
  const Generator l = generator_from_json(read_json_file(opt.generator_path));
  const CanonicalDecomposition cd = decomposition_from_json(read_json_file(opt.decomposition_path));
  if (cd.k.rows() != l.dim()) {
    throw ValidationError("decomposition dimension does not match the generator");
  }
  const VerificationReport report = verify_canonical(cd, l, config.tolerances());
  emit(report_to_json(report), opt, out);
  return report.pass() ? kExitOk : kExitNumerical;
}

int cmd_choi(const Options& opt, std::ostream& out) {
  const SuperOperator phi = map_from_json(read_json_file(opt.map_path));
  const WeightedBasis wb(parse_weights(opt.weights, phi.dim_in));
  const ChoiOperator c = choi_map(phi, wb);
  const RealVector eig = hermitian_eigenvalues(c.matrix);
  Json j;
  j["dim_in"] = c.dim_in;
  j["dim_out"] = c.dim_out;
  j["choi"] = operator_to_json(c.matrix);
  j["min_eigenvalue"] = eig.minCoeff() + 0.0;
  j["max_eigenvalue"] = eig.maxCoeff() + 0.0;
  j["hermiticity_defect"] = hermiticity_defect(c.matrix);
  emit(j, opt, out);
  return kExitOk;
}

int cmd_kraus(const Options& opt, std::ostream& out) {
  const Config config = resolve_config(opt.flags);
  ChoiOperator c;
  WeightedBasis wb = WeightedBasis::uniform(1);
  if (!opt.map_path.empty()) {
    const SuperOperator phi = map_from_json(read_json_file(opt.map_path));
    wb = WeightedBasis(parse_weights(opt.weights, phi.dim_in));
    c = choi_map(phi, wb);
  } else {
    const Operator m = operator_from_json(read_json_file(opt.choi_path), "choi");
    Index din = opt.dim_in;
    Index dout = opt.dim_out;
    if (din == 0 && dout == 0) {
      din = dout = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
    } else if (din == 0) {
      din = dout == 0 ? 0 : m.rows() / dout;
    } else if (dout == 0) {
      dout = m.rows() / din;
    }
    if (din <= 0 || dout <= 0 || m.rows() != din * dout || m.cols() != din * dout) {
      throw ValidationError("choi: operator shape does not match --dim-in/--dim-out");
    }
    c = {din, dout, m};
    wb = WeightedBasis(parse_weights(opt.weights, din));
  }
  const KrausSet ks = kraus_from_choi(c, wb, config.rank_tol, config.tol_psd);
  Json j;
  j["kraus"] = kraus_to_json(ks);
  Json eig = Json::array();
  if (ks.eigenvalues) {
    for (Index i = 0; i < ks.eigenvalues->size(); ++i) eig.push_back((*ks.eigenvalues)(i));
  }
  j["eigenvalues"] = std::move(eig);
  emit(j, opt, out);
  return kExitOk;
}

int cmd_witness(const Options& opt, std::ostream& out) {
  const WeightRule rule = WeightRule::parse(opt.rule);
  const std::vector<WitnessRow> rows = surjectivity_witness(rule, parse_dims(opt.dims));
  Json table = Json::array();
  for (const WitnessRow& r : rows) table.push_back(Json::array({r.dim, r.sup_norm}));
  Json j;
  j["rule"] = rule.name();
  j["rows"] = std::move(table);
  emit(j, opt, out);
  return kExitOk;
}

void add_tolerance_flags(CLI::App& app, Options& opt) {
  app.add_option("--tol-eq", opt.flags.tol_eq, "Hermiticity tolerance (default 1e-10)");
  app.add_option("--tol-psd", opt.flags.tol_psd, "PSD eigenvalue tolerance (default 1e-9)");
  app.add_option("--tol-recon", opt.flags.tol_recon,
                 "reconstruction and domain tolerance (default 1e-9)");
  app.add_option("--rank-tol", opt.flags.rank_tol,
                 "relative Kraus rank cutoff (default 1e-12)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Canonical decompositions of generators of completely positive semigroups",
               "lcanon"};
  app.require_subcommand(1);
  add_tolerance_flags(app, opt);
  app.add_option("--out", opt.out_path, "output file (default: stdout)");

  auto* canon = app.add_subcommand("canonicalize", "unique (K, Phi) or (H, Phi) relative to B");
  canon->add_option("generator", opt.generator_path, "generator JSON file")->required();
  canon->add_option("reference", opt.reference_path, "reference operator B JSON file")->required();
  canon->add_option("--mode", opt.mode, "cp or cptp")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "re-check a decomposition against a generator");
  verify->add_option("generator", opt.generator_path, "generator JSON file")->required();
  verify->add_option("decomposition", opt.decomposition_path, "decomposition JSON file")
      ->required();

  auto* choi = app.add_subcommand("choi", "weighted Choi operator of a map");
  choi->add_option("map", opt.map_path, "map JSON file")->required();
  choi->add_option("--weights", opt.weights, "comma-separated real weights (default all 1)");

  auto* kraus = app.add_subcommand("kraus", "Kraus operators of a CP map");
  auto* kraus_map = kraus->add_option("--map", opt.map_path, "map JSON file");
  auto* kraus_choi = kraus->add_option("--choi", opt.choi_path, "Choi operator JSON file");
  kraus_map->excludes(kraus_choi);
  kraus->add_option("--weights", opt.weights, "comma-separated real weights (default all 1)");
  kraus->add_option("--dim-in", opt.dim_in, "input dimension of a --choi operator");
  kraus->add_option("--dim-out", opt.dim_out, "output dimension of a --choi operator");

  auto* witness = app.add_subcommand("witness", "norms of the unbounded Choi pre-image witness");
  witness->add_option("--weights", opt.rule, "geometric:r or power:p")->required();
  witness->add_option("--dims", opt.dims, "dimension range a:b")->required();

  for (CLI::App* sub : {canon, verify, choi, kraus, witness}) {
    add_tolerance_flags(*sub, opt);
    sub->add_option("--out", opt.out_path, "output file (default: stdout)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (canon->parsed()) return cmd_canonicalize(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (choi->parsed()) return cmd_choi(opt, out);
    if (kraus->parsed()) {
      if (opt.map_path.empty() == opt.choi_path.empty()) {
        throw ValidationError("kraus: give exactly one of --map or --choi");
      }
      return cmd_kraus(opt, out);
    }
    if (witness->parsed()) return cmd_witness(opt, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace lcanon::cli
