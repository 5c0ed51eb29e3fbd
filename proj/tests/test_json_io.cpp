#include <doctest.h>

#include "oracles.hpp"
#include "ptk/errors.hpp"
#include "ptk/json_io.hpp"

using namespace ptk;
using oracle::set;

TEST_CASE("set specs") {
  CHECK(parse_set_spec(std::string(R"({"intervals":[[-2,1]]})")) == set({{-2, 1}}));
  CHECK(parse_set_spec(std::string(R"({"cantor":{"level":2,"ratio":0.3333333333333333}})")).size() == 4);
  CHECK_THROWS_AS(parse_set_spec(std::string("[1,2]")), InvalidInput);
  CHECK_THROWS_AS(parse_set_spec(std::string(R"({"intervals":[[1]]})")), InvalidInput);
  CHECK_THROWS_AS(parse_set_spec(std::string(R"({"intervals":[[1,2]],"cantor":{}})")), InvalidInput);
  CHECK_THROWS_AS(parse_set_spec(std::string(R"({"cantor":{"level":2}})")), InvalidInput);
  CHECK_THROWS_AS(parse_set_spec(std::string("{")), InvalidInput);
}

TEST_CASE("binary64 endpoints round-trip") {
  const IntervalSet k = set({{0.1, 1.0 / 3}, {2.0 / 3, 0.7000000000000001}});
  const std::string text = to_json(k).dump();
  CHECK(interval_set_from_json(Json::parse(text)) == k);
}

TEST_CASE("equilibrium record round-trip") {
  const EquilibriumData e = solve_equilibrium(set({{-2, -1}, {0, 0.5}, {2, 4}}));
  const EquilibriumRecord r = EquilibriumRecord::from(e, 4.0);
  CHECK(r.q_coeffs.size() == 2);
  const EquilibriumRecord back = equilibrium_record_from_json(Json::parse(to_json(r).dump()));
  CHECK(back == r);
  const EquilibriumData rebuilt = EquilibriumData::from_roots(back.set, back.q_roots);
  CHECK(rebuilt.omega_factor(4.0) == *r.omega);
}

TEST_CASE("Markov study round-trip") {
  const MarkovStudy st = markov_study(set({{-1, -0.5}, {0.5, 1}}), 1, {3, 6});
  const MarkovStudy back = markov_study_from_json(Json::parse(to_json(st).dump()));
  CHECK(same_values(st, back));
  CHECK(back.rows[1](0.7) == st.rows[1](0.7));
}

TEST_CASE("audit and convergence round-trip") {
  const AuditReport r = counterexample_demo(20);
  CHECK(same_values(audit_report_from_json(Json::parse(to_json(r).dump())), r));
  const IntervalSet c = cantor_set(3, 0.3);
  const auto rows = outer_convergence_study(c, check_interval_condition(c, 1), {2, 4, 8});
  CHECK(same_values(convergence_rows_from_json(Json::parse(to_json(rows).dump())), rows));
}
