#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ptk/config.hpp"
#include "ptk/equilibrium.hpp"
#include "ptk/extremal.hpp"
#include "ptk/interval_set.hpp"
#include "ptk/schur.hpp"

namespace ptk {

using Json = nlohmann::json;

/// Parses {"intervals": [[l, r], ...]} or {"cantor": {"level": L, "ratio": r}}.
/// Throws InvalidInput on anything else.
IntervalSet parse_set_spec(const Json& spec, const NumericConfig& cfg = {});
IntervalSet parse_set_spec(const std::string& text, const NumericConfig& cfg = {});

Json to_json(const IntervalSet& k);
IntervalSet interval_set_from_json(const Json& j);

/// Flat summary of an equilibrium solve.
struct EquilibriumRecord {
  IntervalSet set;
  std::vector<double> q_roots;
  std::vector<double> q_coeffs;  // monic, lower coefficients only
  double cap = 0.0;
  double robin = 0.0;
  std::optional<double> omega_a;
  std::optional<double> omega;

  static EquilibriumRecord from(const EquilibriumData& e, std::optional<double> a = std::nullopt);
  friend bool operator==(const EquilibriumRecord&, const EquilibriumRecord&) = default;
};

Json to_json(const EquilibriumRecord& r);
EquilibriumRecord equilibrium_record_from_json(const Json& j);

Json to_json(const ExtremalResult& r);
/// Rebuilds the barycentric basis from the stored nodes.
ExtremalResult extremal_result_from_json(const Json& j);

Json to_json(const MarkovStudy& s);
MarkovStudy markov_study_from_json(const Json& j);

Json to_json(const AuditReport& r);
AuditReport audit_report_from_json(const Json& j);

Json to_json(const std::vector<ConvergenceRow>& rows);
std::vector<ConvergenceRow> convergence_rows_from_json(const Json& j);

/// Field-wise equality used by the round-trip checks.
bool same_values(const ExtremalResult& x, const ExtremalResult& y);
bool same_values(const MarkovStudy& x, const MarkovStudy& y);
bool same_values(const AuditReport& x, const AuditReport& y);
bool same_values(const std::vector<ConvergenceRow>& x, const std::vector<ConvergenceRow>& y);

}  // namespace ptk
