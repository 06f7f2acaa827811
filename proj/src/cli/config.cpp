#include "lcanon/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "lcanon/errors.hpp"

namespace lcanon::cli {

namespace {

void resolve_one(double& target, const std::optional<double>& flag, const char* env_name,
                 const char* flag_name, const EnvLookup& env) {
  if (flag) {
    target = *flag;
  } else if (const char* raw = env(env_name); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (*end != '\0') {
      throw ValidationError(std::string(env_name) + ": '" + raw + "' is not a number");
    }
    target = value;
  }
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw ValidationError(std::string(flag_name) + " must be positive and finite");
  }
}

}  // namespace

Config resolve_config(const ConfigFlags& flags, const EnvLookup& env) {
  Config c;
  resolve_one(c.tol_eq, flags.tol_eq, "LCANON_TOL_EQ", "--tol-eq", env);
  resolve_one(c.tol_psd, flags.tol_psd, "LCANON_TOL_PSD", "--tol-psd", env);
  resolve_one(c.tol_recon, flags.tol_recon, "LCANON_TOL_RECON", "--tol-recon", env);
  resolve_one(c.rank_tol, flags.rank_tol, "LCANON_RANK_TOL", "--rank-tol", env);
  return c;
}

Config resolve_config(const ConfigFlags& flags) {
  return resolve_config(flags, [](const char* name) { return std::getenv(name); });
}

}  // namespace lcanon::cli
