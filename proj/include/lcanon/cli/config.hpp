#pragma once

#include <functional>
#include <optional>

#include "lcanon/gksl.hpp"

namespace lcanon::cli {

struct Config {
  double tol_eq = 1e-10;
  double tol_psd = 1e-9;
  double tol_recon = 1e-9;
  double rank_tol = 1e-12;

  Tolerances tolerances() const { return {tol_eq, tol_psd, tol_recon, rank_tol}; }
};

struct ConfigFlags {
  std::optional<double> tol_eq;
  std::optional<double> tol_psd;
  std::optional<double> tol_recon;
  std::optional<double> rank_tol;
};

using EnvLookup = std::function<const char*(const char*)>;

// Precedence: flag > LCANON_* environment variable > default.
// Every value must be positive and finite.
Config resolve_config(const ConfigFlags& flags, const EnvLookup& env);
Config resolve_config(const ConfigFlags& flags);

}  // namespace lcanon::cli
