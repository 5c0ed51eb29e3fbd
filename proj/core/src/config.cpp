#include "ptk/config.hpp"

#include <cstdlib>

#include <nlohmann/json.hpp>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

template <class T>
void take(const nlohmann::json& j, const char* key, T& field, std::size_t& used) {
  if (auto it = j.find(key); it != j.end()) {
    field = it->get<T>();
    ++used;
  }
}

}  // namespace

NumericConfig apply_overrides(NumericConfig c, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("config overrides: ") + ex.what());
  }
  if (!j.is_object()) throw InvalidInput("config overrides must be a JSON object");
  std::size_t used = 0;
  try {
    take(j, "quad_min_nodes", c.quad_min_nodes, used);
    take(j, "quad_max_nodes", c.quad_max_nodes, used);
    take(j, "quad_rel_tol", c.quad_rel_tol, used);
    take(j, "solve_tol", c.solve_tol, used);
    take(j, "singular_pivot", c.singular_pivot, used);
    take(j, "newton_max_iter", c.newton_max_iter, used);
    take(j, "newton_tol", c.newton_tol, used);
    take(j, "endpoint_exclusion", c.endpoint_exclusion, used);
    take(j, "green_zero_clamp", c.green_zero_clamp, used);
    take(j, "lp_gap_tol", c.lp_gap_tol, used);
    take(j, "lp_iter_factor", c.lp_iter_factor, used);
    take(j, "grid_factor", c.grid_factor, used);
    take(j, "validation_factor", c.validation_factor, used);
    take(j, "overshoot_tol", c.overshoot_tol, used);
    take(j, "max_degree", c.max_degree, used);
    take(j, "cantor_level_cap", c.cantor_level_cap, used);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("config overrides: ") + ex.what());
  }
  if (used != j.size()) throw InvalidInput("config overrides: unknown key");
  if (c.quad_min_nodes < 2 || c.quad_max_nodes < c.quad_min_nodes || c.grid_factor < 2 ||
      c.validation_factor < 1 || c.lp_iter_factor < 1 || c.max_degree < 1 ||
      c.cantor_level_cap < 0 || c.cantor_level_cap > 24)
    throw InvalidInput("config overrides: value out of range");
  return c;
}

NumericConfig config_from_environment() {
  const char* env = std::getenv("PTK_DEFAULTS");
  if (env == nullptr || *env == '\0') return {};
  return apply_overrides({}, env);
}

}  // namespace ptk
