#include "ptk/json_io.hpp"

#include <algorithm>
#include <memory>

#include "ptk/errors.hpp"

namespace ptk {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidInput(std::string("field '") + key + "': " + ex.what());
  }
}

}  // namespace

IntervalSet parse_set_spec(const Json& spec, const NumericConfig& cfg) {
  if (!spec.is_object()) throw InvalidInput("set spec must be a JSON object");
  if (spec.contains("intervals") && spec.contains("cantor"))
    throw InvalidInput("set spec has both 'intervals' and 'cantor'");
  if (spec.contains("intervals")) return interval_set_from_json(spec);
  if (spec.contains("cantor")) {
    const Json& c = spec.at("cantor");
    return cantor_set(field<int>(c, "level"), field<double>(c, "ratio"), cfg);
  }
  throw InvalidInput("set spec needs 'intervals' or 'cantor'");
}

IntervalSet parse_set_spec(const std::string& text, const NumericConfig& cfg) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidInput(std::string("set spec is not valid JSON: ") + ex.what());
  }
  return parse_set_spec(j, cfg);
}

Json to_json(const IntervalSet& k) {
  Json iv = Json::array();
  for (const Interval& i : k.intervals()) iv.push_back({i.left, i.right});
  return Json{{"intervals", iv}};
}

IntervalSet interval_set_from_json(const Json& j) {
  const Json& iv = j.at("intervals");
  if (!iv.is_array()) throw InvalidInput("'intervals' must be an array");
  std::vector<std::pair<double, double>> raw;
  for (const Json& p : iv) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw InvalidInput("each interval must be a pair of numbers");
    raw.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return IntervalSet::normalize(raw);
}

EquilibriumRecord EquilibriumRecord::from(const EquilibriumData& e, std::optional<double> a) {
  EquilibriumRecord r{e.set(), e.gap_roots(), e.q().coeffs(), e.cap(), e.robin(), std::nullopt, std::nullopt};
  if (a) {
    r.omega_a = *a;
    r.omega = e.omega_factor(*a);
  }
  return r;
}

Json to_json(const EquilibriumRecord& r) {
  Json j{{"set", to_json(r.set)},
         {"q_roots", r.q_roots},
         {"q_coeffs", r.q_coeffs},
         {"cap", r.cap},
         {"robin", r.robin}};
  if (r.omega) j["omega"] = Json{{"a", *r.omega_a}, {"value", *r.omega}};
  return j;
}

EquilibriumRecord equilibrium_record_from_json(const Json& j) {
  EquilibriumRecord r{interval_set_from_json(j.at("set")),
                      field<std::vector<double>>(j, "q_roots"),
                      field<std::vector<double>>(j, "q_coeffs"),
                      field<double>(j, "cap"),
                      field<double>(j, "robin"),
                      std::nullopt,
                      std::nullopt};
  if (j.contains("omega")) {
    r.omega_a = field<double>(j.at("omega"), "a");
    r.omega = field<double>(j.at("omega"), "value");
  }
  return r;
}

Json to_json(const ExtremalResult& r) {
  Json witness;
  if (r.basis) {
    const auto [lo, hi] = std::minmax_element(r.nodes.begin(), r.nodes.end());
    const ChebPoly c = r.to_chebyshev(*lo, *hi);
    witness = Json{{"lo", c.lo()}, {"hi", c.hi()}, {"chebyshev_coeffs", c.coeffs()}};
  }
  return Json{{"degree", r.degree},
              {"witness", witness},
              {"value", r.value},
              {"ratio", r.ratio},
              {"nodes", r.nodes},
              {"nodal_values", r.nodal_values},
              {"active_points", r.active_points},
              {"validation_max", r.validation_max},
              {"grid_points", r.grid_points},
              {"lp_iterations", r.lp_iterations}};
}

ExtremalResult extremal_result_from_json(const Json& j) {
  ExtremalResult r;
  r.degree = field<int>(j, "degree");
  r.value = field<double>(j, "value");
  r.ratio = field<double>(j, "ratio");
  r.nodes = field<std::vector<double>>(j, "nodes");
  r.nodal_values = field<std::vector<double>>(j, "nodal_values");
  r.active_points = field<std::vector<double>>(j, "active_points");
  r.validation_max = field<double>(j, "validation_max");
  r.grid_points = field<std::size_t>(j, "grid_points");
  r.lp_iterations = field<int>(j, "lp_iterations");
  if (r.nodes.size() != r.nodal_values.size()) throw InvalidInput("nodes and nodal_values differ in length");
  if (!r.nodes.empty()) r.basis = std::make_shared<const BarycentricBasis>(r.nodes);
  return r;
}

Json to_json(const MarkovStudy& s) {
  Json rows = Json::array();
  for (const ExtremalResult& r : s.rows) rows.push_back(to_json(r));
  return Json{{"set", to_json(s.set)},
              {"a", s.a},
              {"limit_constant", s.limit_constant},
              {"flagged", s.flagged},
              {"rows", rows}};
}

MarkovStudy markov_study_from_json(const Json& j) {
  MarkovStudy s;
  s.set = interval_set_from_json(j.at("set"));
  s.a = field<double>(j, "a");
  s.limit_constant = field<double>(j, "limit_constant");
  s.flagged = field<std::vector<int>>(j, "flagged");
  for (const Json& r : j.at("rows")) s.rows.push_back(extremal_result_from_json(r));
  return s;
}

Json to_json(const AuditReport& r) {
  return Json{{"n", r.n},
              {"local_ok", r.local_ok},
              {"local_worst_margin", r.local_worst_margin},
              {"growth_estimate", r.growth_estimate},
              {"norm_ratio", r.norm_ratio},
              {"point_ratio", r.point_ratio},
              {"omega", r.omega},
              {"h_a", r.h_a},
              {"norm_local", r.norm_local},
              {"value_at_a", r.value_at_a},
              {"sup_on_k", r.sup_on_k},
              {"local_grid_points", r.local_grid_points},
              {"global_grid_per_interval", r.global_grid_per_interval},
              {"grid_note", r.grid_note}};
}

AuditReport audit_report_from_json(const Json& j) {
  AuditReport r;
  r.n = field<int>(j, "n");
  r.local_ok = field<bool>(j, "local_ok");
  r.local_worst_margin = field<double>(j, "local_worst_margin");
  r.growth_estimate = field<double>(j, "growth_estimate");
  r.norm_ratio = field<double>(j, "norm_ratio");
  r.point_ratio = field<double>(j, "point_ratio");
  r.omega = field<double>(j, "omega");
  r.h_a = field<double>(j, "h_a");
  r.norm_local = field<double>(j, "norm_local");
  r.value_at_a = field<double>(j, "value_at_a");
  r.sup_on_k = field<double>(j, "sup_on_k");
  r.local_grid_points = field<int>(j, "local_grid_points");
  r.global_grid_per_interval = field<int>(j, "global_grid_per_interval");
  r.grid_note = field<std::string>(j, "grid_note");
  return r;
}

Json to_json(const std::vector<ConvergenceRow>& rows) {
  Json out = Json::array();
  for (const ConvergenceRow& r : rows) out.push_back({{"m", r.m}, {"intervals", r.intervals}, {"omega", r.omega}});
  return out;
}

std::vector<ConvergenceRow> convergence_rows_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("convergence table must be an array");
  std::vector<ConvergenceRow> rows;
  for (const Json& r : j)
    rows.push_back({field<int>(r, "m"), field<std::size_t>(r, "intervals"), field<double>(r, "omega")});
  return rows;
}

bool same_values(const ExtremalResult& x, const ExtremalResult& y) {
  return x.degree == y.degree && x.value == y.value && x.ratio == y.ratio && x.nodes == y.nodes &&
         x.nodal_values == y.nodal_values && x.active_points == y.active_points &&
         x.validation_max == y.validation_max && x.grid_points == y.grid_points &&
         x.lp_iterations == y.lp_iterations;
}

bool same_values(const MarkovStudy& x, const MarkovStudy& y) {
  if (!(x.set == y.set && x.a == y.a && x.limit_constant == y.limit_constant && x.flagged == y.flagged &&
        x.rows.size() == y.rows.size()))
    return false;
  for (std::size_t i = 0; i < x.rows.size(); ++i)
    if (!same_values(x.rows[i], y.rows[i])) return false;
  return true;
}

bool same_values(const AuditReport& x, const AuditReport& y) {
  return x.n == y.n && x.local_ok == y.local_ok && x.local_worst_margin == y.local_worst_margin &&
         x.growth_estimate == y.growth_estimate && x.norm_ratio == y.norm_ratio &&
         x.point_ratio == y.point_ratio && x.omega == y.omega && x.h_a == y.h_a &&
         x.norm_local == y.norm_local && x.value_at_a == y.value_at_a && x.sup_on_k == y.sup_on_k &&
         x.local_grid_points == y.local_grid_points &&
         x.global_grid_per_interval == y.global_grid_per_interval && x.grid_note == y.grid_note;
}

bool same_values(const std::vector<ConvergenceRow>& x, const std::vector<ConvergenceRow>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].m != y[i].m || x[i].intervals != y[i].intervals || x[i].omega != y[i].omega) return false;
  return true;
}

}  // namespace ptk
