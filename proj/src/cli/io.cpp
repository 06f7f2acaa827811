#include "lcanon/cli/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lcanon/errors.hpp"

namespace lcanon::cli {

namespace {

const Json& require_field(const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(field + "." + key + ": missing field");
  return *it;
}

Index positive_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ValidationError(field + ": expected a positive integer");
  }
  return static_cast<Index>(j.get<long long>());
}

Index infer_square_dim(Index n, const std::string& field) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw ValidationError(field + ": size " + std::to_string(n) + " is not a square");
  return d;
}

void dump_number(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) throw NumericalError("output contains a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v + 0.0);
  os << buf;
}

void dump_value(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump_value(os, it.value(), depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << (flat ? "[" : "[\n");
      bool first = true;
      for (const Json& e : j) {
        if (!first) os << (flat ? ", " : ",\n");
        first = false;
        if (!flat) os << pad;
        dump_value(os, e, depth + 1);
      }
      if (!flat) os << "\n" << close_pad;
      os << "]";
      return;
    }
    case Json::value_t::number_float:
      dump_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

}  // namespace

Operator operator_from_json(const Json& j, const std::string& field) {
  const Index rows = positive_int(require_field(j, "rows", field), field + ".rows");
  const Index cols = positive_int(require_field(j, "cols", field), field + ".cols");
  const Json& data = require_field(j, "data", field);
  if (!data.is_array()) throw ValidationError(field + ".data: expected an array");
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw ValidationError(field + ".data: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data.size()));
  }
  Operator x(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) {
      const Json& e = data[static_cast<std::size_t>(i * cols + k)];
      const std::string where = field + ".data[" + std::to_string(i * cols + k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ValidationError(where + ": expected [re, im]");
      }
      x(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(x(i, k).real()) || !std::isfinite(x(i, k).imag())) {
        throw ValidationError(where + ": entry must be finite");
      }
    }
  }
  return x;
}

Json operator_to_json(const Operator& x) {
  Json data = Json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index k = 0; k < x.cols(); ++k) {
      // +0.0 normalizes negative zeros so reruns print identically.
      data.push_back(Json::array({x(i, k).real() + 0.0, x(i, k).imag() + 0.0}));
    }
  }
  return Json{{"rows", x.rows()}, {"cols", x.cols()}, {"data", std::move(data)}};
}

KrausSet kraus_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of operators");
  std::vector<Operator> ops;
  for (std::size_t i = 0; i < j.size(); ++i) {
    ops.push_back(operator_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 1; i < ops.size(); ++i) {
    if (ops[i].rows() != ops[0].rows() || ops[i].cols() != ops[0].cols()) {
      throw ValidationError(field + "[" + std::to_string(i) + "]: shape differs from " + field +
                            "[0]");
    }
  }
  return KrausSet(std::move(ops));
}

Json kraus_to_json(const KrausSet& ks) {
  Json arr = Json::array();
  for (const Operator& v : ks.operators) arr.push_back(operator_to_json(v));
  return arr;
}

Generator generator_from_json(const Json& j) {
  const Json& type = require_field(j, "type", "generator");
  if (!type.is_string()) throw ValidationError("generator.type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "superop_matrix") {
    const Operator m = operator_from_json(require_field(j, "matrix", "generator"),
                                          "generator.matrix");
    if (m.rows() != m.cols()) throw ValidationError("generator.matrix: must be square");
    const Index d = infer_square_dim(m.rows(), "generator.matrix");
    return {SuperOperator(d, d, m), GeneratorClass::unknown};
  }
  if (kind == "k_plus_kraus" || kind == "gksl") {
    const bool gksl = kind == "gksl";
    const std::string key = gksl ? "H" : "K";
    const Operator k = operator_from_json(require_field(j, key, "generator"), "generator." + key);
    if (k.rows() != k.cols()) throw ValidationError("generator." + key + ": must be square");
    KrausSet ks = j.contains("kraus") ? kraus_from_json(j["kraus"], "generator.kraus")
                                      : KrausSet(k.rows(), k.rows());
    if (ks.empty()) ks = KrausSet(k.rows(), k.rows());
    if (ks.dim_in != k.rows() || ks.dim_out != k.rows()) {
      throw ValidationError("generator.kraus: operators must match the shape of generator." + key);
    }
    if (gksl) {
      if (hermiticity_defect(k) > 1e-10) throw ValidationError("generator.H: must be Hermitian");
      return build_gksl_generator(k, ks);
    }
    return build_cp_generator(k, ks);
  }
  throw ValidationError("generator.type: unknown type '" + kind + "'");
}

SuperOperator map_from_json(const Json& j) {
  const Json& type = require_field(j, "type", "map");
  if (!type.is_string()) throw ValidationError("map.type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "superop_matrix") {
    const Operator m = operator_from_json(require_field(j, "matrix", "map"), "map.matrix");
    const Index din = j.contains("dim_in") ? positive_int(j["dim_in"], "map.dim_in")
                                           : infer_square_dim(m.cols(), "map.matrix");
    const Index dout = j.contains("dim_out") ? positive_int(j["dim_out"], "map.dim_out")
                                             : infer_square_dim(m.rows(), "map.matrix");
    if (m.rows() != dout * dout || m.cols() != din * din) {
      throw ValidationError("map.matrix: shape does not match dim_in/dim_out");
    }
    return SuperOperator(din, dout, m);
  }
  if (kind == "kraus") {
    const KrausSet ks = kraus_from_json(require_field(j, "kraus", "map"), "map.kraus");
    if (ks.empty()) throw ValidationError("map.kraus: need at least one operator");
    return superop_from_kraus(ks);
  }
  throw ValidationError("map.type: unknown type '" + kind + "'");
}

Json report_to_json(const VerificationReport& report) {
  Json checks = Json::array();
  for (const ResidualCheck& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"value", c.value},
                          {"tolerance", c.tolerance},
                          {"bound", c.bound == ResidualCheck::Bound::at_most ? "at_most" : "at_least"},
                          {"asserted", c.asserted},
                          {"pass", c.pass()}});
  }
  return Json{{"checks", std::move(checks)}, {"pass", report.pass()}};
}

Json decomposition_to_json(const CanonicalDecomposition& cd, const VerificationReport& report) {
  Json j;
  j["mode"] = cd.mode == DecompositionMode::cptp ? "cptp" : "cp";
  j["K"] = operator_to_json(cd.k);
  if (cd.h) j["H"] = operator_to_json(*cd.h);
  j["kraus"] = kraus_to_json(cd.phi);
  j["reference"] = operator_to_json(cd.reference);
  Json residuals = Json::object();
  for (const auto& [name, value] : cd.residuals) residuals[name] = value;
  j["residuals"] = std::move(residuals);
  j["report"] = report_to_json(report);
  return j;
}

CanonicalDecomposition decomposition_from_json(const Json& j) {
  CanonicalDecomposition cd;
  const Json& mode = require_field(j, "mode", "decomposition");
  if (mode == "cp") {
    cd.mode = DecompositionMode::cp;
  } else if (mode == "cptp") {
    cd.mode = DecompositionMode::cptp;
  } else {
    throw ValidationError("decomposition.mode: expected \"cp\" or \"cptp\"");
  }
  cd.k = operator_from_json(require_field(j, "K", "decomposition"), "decomposition.K");
  if (cd.k.rows() != cd.k.cols()) throw ValidationError("decomposition.K: must be square");
  if (cd.mode == DecompositionMode::cptp) {
    cd.h = operator_from_json(require_field(j, "H", "decomposition"), "decomposition.H");
  }
  cd.phi = kraus_from_json(require_field(j, "kraus", "decomposition"), "decomposition.kraus");
  if (cd.phi.empty()) cd.phi = KrausSet(cd.k.rows(), cd.k.rows());
  cd.reference = operator_from_json(require_field(j, "reference", "decomposition"),
                                    "decomposition.reference");
  if (cd.phi.dim_in != cd.k.rows() || cd.phi.dim_out != cd.k.rows() ||
      cd.reference.rows() != cd.k.rows() || cd.reference.cols() != cd.k.rows()) {
    throw ValidationError("decomposition: K, kraus and reference dimensions disagree");
  }
  return cd;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump_deterministic(const Json& j) {
  std::ostringstream os;
  dump_value(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace lcanon::cli
