#pragma once

#include <string>

#include <json.hpp>

#include "lcanon/gksl.hpp"
#include "lcanon/kraus.hpp"
#include "lcanon/superop.hpp"

namespace lcanon::cli {

using Json = nlohmann::json;

// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Operator operator_from_json(const Json& j, const std::string& field);
Json operator_to_json(const Operator& x);

KrausSet kraus_from_json(const Json& j, const std::string& field);
Json kraus_to_json(const KrausSet& ks);

// Generator files: "superop_matrix" {matrix}, "k_plus_kraus" {K, kraus},
// "gksl" {H, kraus}.
Generator generator_from_json(const Json& j);

// Map files: "superop_matrix" {matrix[, dim_in, dim_out]} or "kraus" {kraus}.
SuperOperator map_from_json(const Json& j);

Json decomposition_to_json(const CanonicalDecomposition& cd, const VerificationReport& report);
CanonicalDecomposition decomposition_from_json(const Json& j);

Json report_to_json(const VerificationReport& report);

Json read_json_file(const std::string& path);

// Sorted keys, numbers printed with 17 significant digits, two-space indent.
std::string dump_deterministic(const Json& j);

}  // namespace lcanon::cli
