#include "ptk_cli/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "ptk/equilibrium.hpp"
#include "ptk/errors.hpp"
#include "ptk/extremal.hpp"
#include "ptk/json_io.hpp"
#include "ptk/schur.hpp"
#include "ptk_cli/svg.hpp"

namespace ptk::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Artifact {
  std::string body;
  std::string violation;  // empty when every audit passed
};

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw InvalidInput("not an integer: '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InvalidInput("not a finite number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

IntervalSet load_set(const RunConfig& cfg) {
  if (cfg.set_spec.empty()) throw InvalidInput(cfg.command + ": --set is required");
  const auto first = cfg.set_spec.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && cfg.set_spec[first] == '{';
  return parse_set_spec(inline_json ? cfg.set_spec : read_file(cfg.set_spec), cfg.numeric);
}

double need(const std::optional<double>& v, const std::string& cmd, const char* flag) {
  if (!v) throw InvalidInput(cmd + ": " + flag + " is required");
  return *v;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// CSV with a header row and %.17g numbers.
class Csv {
 public:
  explicit Csv(std::vector<std::string> header) {
    for (std::size_t i = 0; i < header.size(); ++i) s_ << (i ? "," : "") << header[i];
    s_ << '\n';
  }
  Csv& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s_ << (i ? "," : "") << cells[i];
    s_ << '\n';
    return *this;
  }
  std::string str() const { return s_.str(); }

 private:
  std::ostringstream s_;
};

std::string f(double v) { return format_real(v); }
std::string f(int v) { return std::to_string(v); }
std::string f(std::size_t v) { return std::to_string(v); }

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed, const std::string& cmd) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw InvalidInput(cmd + ": format '" + fmt + "' is not supported");
}

// interior sample points of [l, r]
std::vector<double> interior(double l, double r, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = l + (r - l) * (i + 0.5) / points;
  return t;
}

Artifact cmd_density(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json", "svg"}, cfg.command);
  if (cfg.points < 1) throw InvalidInput("density: --points must be positive");
  const IntervalSet k = load_set(cfg);
  const EquilibriumData e = solve_equilibrium(k, cfg.numeric);
  std::vector<Series> series;
  Csv csv({"component", "t", "density"});
  Json rows = Json::array();
  for (std::size_t j = 0; j < k.size(); ++j) {
    Series s{"component " + std::to_string(j), {}};
    for (double t : interior(k[j].left, k[j].right, cfg.points)) {
      const double w = e.density(t);
      s.points.emplace_back(t, w);
      csv.row({f(j), f(t), f(w)});
      rows.push_back({{"component", j}, {"t", t}, {"density", w}});
    }
    series.push_back(std::move(s));
  }
  if (fmt == "csv") return {csv.str(), ""};
  if (fmt == "json") return {dump({{"set", to_json(k)}, {"rows", rows}}), ""};
  return {emit_svg(series, {"t", "equilibrium density", "equilibrium density"}), ""};
}

Artifact cmd_omega(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json"}, cfg.command);
  const IntervalSet k = load_set(cfg);
  const double a = need(cfg.a, cfg.command, "--a");
  const EndpointContext ctx = check_interval_condition(k, a);
  const EquilibriumData e = solve_equilibrium(k, cfg.numeric);
  const double omega = e.omega_factor(ctx.a);
  const double markov = 2.0 * kPi * kPi * omega * omega;
  if (fmt == "csv") return {Csv({"a", "omega", "markov_constant"}).row({f(ctx.a), f(omega), f(markov)}).str(), ""};
  return {dump({{"set", to_json(k)}, {"a", ctx.a}, {"omega", omega}, {"markov_constant", markov}}), ""};
}

Artifact cmd_capacity(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json"}, cfg.command);
  const IntervalSet k = load_set(cfg);
  const EquilibriumData e = solve_equilibrium(k, cfg.numeric);
  std::optional<double> a;
  if (cfg.a) a = check_interval_condition(k, *cfg.a).a;
  const EquilibriumRecord rec = EquilibriumRecord::from(e, a);
  // audit: the potential is constant on K
  double spread = 0.0;
  for (const auto& iv : k.intervals())
    for (double t : interior(iv.left, iv.right, 7)) spread = std::max(spread, std::abs(e.potential(t) - e.robin()));
  std::string violation;
  if (spread > 1e-7) violation = "equilibrium potential deviates from the Robin constant by " + f(spread);
  if (fmt == "csv") return {Csv({"cap", "robin", "potential_spread"}).row({f(rec.cap), f(rec.robin), f(spread)}).str(), violation};
  return {dump(to_json(rec)), violation};
}

Artifact cmd_green(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json"}, cfg.command);
  const IntervalSet k = load_set(cfg);
  if (cfg.z.empty()) throw InvalidInput("green: --z is required");
  const EquilibriumData e = solve_equilibrium(k, cfg.numeric);
  Csv csv({"z", "green"});
  Json rows = Json::array();
  std::string violation;
  for (double z : cfg.z) {
    const double g = e.green(z);
    if (g < -cfg.numeric.green_zero_clamp) violation = "negative Green's function at z = " + f(z);
    csv.row({f(z), f(g)});
    rows.push_back({{"z", z}, {"green", g}});
  }
  if (fmt == "csv") return {csv.str(), violation};
  return {dump({{"set", to_json(k)}, {"rows", rows}}), violation};
}

Artifact cmd_balayage(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json", "svg"}, cfg.command);
  const BalayageQuery q{need(cfg.x, cfg.command, "--x"), need(cfg.b, cfg.command, "--b"),
                        need(cfg.a, cfg.command, "--a")};
  q.validate();
  if (cfg.points < 1) throw InvalidInput("balayage: --points must be positive");
  const double mass = balayage_mass(q, cfg.numeric);
  const double edge = balayage_edge_limit(q);
  std::string violation;
  if (std::abs(mass - 1.0) > 1e-6) violation = "balayage mass " + f(mass) + " differs from 1";
  Csv csv({"t", "density"});
  Json rows = Json::array();
  Series s{"Bal(delta_x)", {}};
  for (double t : interior(q.b, q.a, cfg.points)) {
    const double v = balayage_density(q, t);
    csv.row({f(t), f(v)});
    rows.push_back({{"t", t}, {"density", v}});
    s.points.emplace_back(t, v);
  }
  if (fmt == "csv") return {csv.str(), violation};
  if (fmt == "svg") return {emit_svg({s}, {"t", "density", "balayage kernel"}), violation};
  return {dump({{"x", q.x}, {"b", q.b}, {"a", q.a}, {"mass", mass}, {"edge_limit", edge}, {"rows", rows}}),
          violation};
}

Artifact cmd_markov(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json", "svg"}, cfg.command);
  const IntervalSet k = load_set(cfg);
  const double a = need(cfg.a, cfg.command, "--a");
  if (cfg.degrees.empty()) throw InvalidInput("markov: --degrees is required");
  const MarkovStudy st = markov_study(k, a, cfg.degrees, cfg.numeric);
  std::string violation;
  if (!st.ok()) {
    violation = "ratio above 1.02 * limit constant at degree";
    for (int d : st.flagged) violation += " " + std::to_string(d);
  }
  if (fmt == "json") return {dump(to_json(st)), violation};
  if (fmt == "csv") {
    Csv csv({"degree", "value", "ratio", "limit_constant"});
    for (const auto& r : st.rows) csv.row({f(r.degree), f(r.value), f(r.ratio), f(st.limit_constant)});
    return {csv.str(), violation};
  }
  Series ratio{"value / n^2", {}}, limit{"2 pi^2 Omega^2", {}};
  for (const auto& r : st.rows) {
    ratio.points.emplace_back(r.degree, r.ratio);
    limit.points.emplace_back(r.degree, st.limit_constant);
  }
  return {emit_svg({ratio, limit}, {"degree n", "ratio", "Markov ratios"}), violation};
}

Artifact cmd_schur_witness(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json"}, cfg.command);
  const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{400} : cfg.n_list;
  const InverseImageMap map = InverseImageMap::quadratic(cfg.alpha);
  const IntervalSet& k = map.target();
  const EndpointContext ctx = check_interval_condition(k, map.a());
  const EquilibriumData e = solve_equilibrium(k, cfg.numeric);
  if (cfg.points < 1) throw InvalidInput("schur-witness: --points must be positive");
  std::string violation;
  // evaluation table on [a - rho, a): x, P(x), h(x)/sqrt(a - x) with h = 1
  Csv csv({"n", "x", "p", "bound"});
  Json reports = Json::array();
  for (int n : ns) {
    const SchurWitness w = build_witness(map, 1.0, n, cfg.eta);
    const AuditReport r = audit_bound([&w](double x) { return w(x); }, [](double) { return 1.0; }, k, ctx, n, e);
    if (!r.local_ok) violation = "local hypothesis fails for n = " + std::to_string(n);
    if (r.norm_ratio > 1.0 + 1e-9) violation = "norm ratio above 1 for n = " + std::to_string(n);
    for (int i = 0; i < cfg.points; ++i) {
      const double x = ctx.a - ctx.rho + ctx.rho * i / cfg.points;
      csv.row({f(n), f(x), f(w(x)), f(1.0 / std::sqrt(ctx.a - x))});
    }
    Json j = to_json(r);
    j["m"] = w.m();
    reports.push_back(j);
  }
  if (fmt == "csv") return {csv.str(), violation};
  return {dump({{"alpha", cfg.alpha}, {"eta", cfg.eta}, {"reports", reports}}), violation};
}

Artifact cmd_schur_counterexample(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json"}, cfg.command);
  const std::vector<int> ns = cfg.n_list.empty() ? std::vector<int>{200} : cfg.n_list;
  std::string violation;
  Csv csv({"n", "local_ok", "point_ratio", "expected_point_ratio", "growth_estimate"});
  Json reports = Json::array();
  for (int n : ns) {
    const AuditReport r = counterexample_demo(n);
    const double expected = ((n + 1.0) / n) / std::sqrt(2.0 / 3.0);
    if (!r.local_ok || !(r.point_ratio > 1.0))
      violation = "counterexample does not exceed the bound for n = " + std::to_string(n);
    csv.row({f(n), r.local_ok ? "1" : "0", f(r.point_ratio), f(expected), f(r.growth_estimate)});
    reports.push_back(to_json(r));
  }
  if (fmt == "csv") return {csv.str(), violation};
  return {dump({{"reports", reports}}), violation};
}

Artifact cmd_converge(const RunConfig& cfg, const std::string& fmt) {
  require_format(fmt, {"csv", "json", "svg"}, cfg.command);
  const IntervalSet k = load_set(cfg);
  const double a = need(cfg.a, cfg.command, "--a");
  if (cfg.m_list.empty()) throw InvalidInput("converge: --m is required");
  const EndpointContext ctx = check_interval_condition(k, a);
  const std::vector<ConvergenceRow> rows = outer_convergence_study(k, ctx, cfg.m_list, cfg.numeric);
  std::string violation;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].m >= rows[i - 1].m && rows[i].omega < rows[i - 1].omega * (1.0 - 1e-9))
      violation = "Omega decreases between m = " + std::to_string(rows[i - 1].m) + " and m = " +
                  std::to_string(rows[i].m);
  if (fmt == "json") return {dump({{"set", to_json(k)}, {"a", ctx.a}, {"rows", to_json(rows)}}), violation};
  if (fmt == "csv") {
    Csv csv({"m", "intervals", "omega"});
    for (const auto& r : rows) csv.row({f(r.m), f(r.intervals), f(r.omega)});
    return {csv.str(), violation};
  }
  Series s{"Omega(K_m+, a)", {}};
  for (const auto& r : rows) s.points.emplace_back(r.m, r.omega);
  return {emit_svg({s}, {"m", "Omega", "outer approximation"}), violation};
}

using Handler = std::function<Artifact(const RunConfig&, const std::string&)>;

struct Command {
  Handler handler;
  const char* default_format;
};

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"density", {cmd_density, "csv"}},
      {"omega", {cmd_omega, "json"}},
      {"capacity", {cmd_capacity, "json"}},
      {"green", {cmd_green, "csv"}},
      {"balayage", {cmd_balayage, "json"}},
      {"markov", {cmd_markov, "csv"}},
      {"schur-witness", {cmd_schur_witness, "json"}},
      {"schur-counterexample", {cmd_schur_counterexample, "csv"}},
      {"converge", {cmd_converge, "csv"}},
  };
  return table;
}

void write_atomic(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw InvalidInput("cannot write '" + path + "'");
    o << body;
    o.flush();
    if (!o) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw InvalidInput("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InvalidInput("cannot move output into place at '" + path + "'");
  }
}

int report(std::ostream& err, const char* kind, int code, const std::string& message) {
  err << Json{{"error", {{"kind", kind}, {"exit_code", code}, {"message", message}}}}.dump() << '\n';
  return code;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty list");
  std::vector<int> out;
  for (const std::string& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(part));
      continue;
    }
    const int lo = to_int(part.substr(0, dots));
    std::string rest = part.substr(dots + 2);
    int factor = 0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      const std::string step = rest.substr(colon + 1);
      if (step.size() < 2 || step[0] != 'x') throw InvalidInput("bad range step '" + step + "' (use :xK)");
      factor = to_int(step.substr(1));
      if (factor < 2) throw InvalidInput("geometric factor must be at least 2");
      rest = rest.substr(0, colon);
    }
    const int hi = to_int(rest);
    if (hi < lo) throw InvalidInput("empty range '" + part + "'");
    if (factor == 0) {
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      if (lo < 1) throw InvalidInput("geometric range must start at a positive value");
      for (long long v = lo; v <= hi; v *= factor) out.push_back(static_cast<int>(v));
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty list");
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(to_real(part));
  return out;
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Potential-theory toolkit: equilibrium measures, Markov and Schur factors"};
  RunConfig cfg;
  std::string degrees, m_list, n_list, z_list, overrides;
  double a = 0.0, x = 0.0, b = 0.0;
  app.add_option("command", cfg.command, "density | omega | capacity | green | balayage | markov | "
                                         "schur-witness | schur-counterexample | converge")
      ->required();
  app.add_option("--set", cfg.set_spec, "set spec: inline JSON or path to a JSON file");
  auto* opt_a = app.add_option("--a", a, "right endpoint a");
  auto* opt_x = app.add_option("--x", x, "balayage source point");
  auto* opt_b = app.add_option("--b", b, "left end of the balayage interval [b, a]");
  app.add_option("--z", z_list, "comma-separated evaluation points (green)");
  app.add_option("--degrees", degrees, "degree list, e.g. 5,10 or 10..60 or 8..64:x2");
  app.add_option("--m", m_list, "outer-approximation sizes, same syntax as --degrees");
  app.add_option("--n", n_list, "degrees for the Schur commands");
  app.add_option("--alpha", cfg.alpha, "gap half-width of [-1,-alpha] u [alpha,1]");
  app.add_option("--eta", cfg.eta, "witness damping eta in (0, 1]");
  app.add_option("--points", cfg.points, "sample points per component");
  app.add_option("--config", overrides, "JSON object of numeric overrides");
  app.add_option("--format", cfg.format, "csv | json | svg");
  app.add_option("--output,-o", cfg.output, "output file (default: standard output)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& ex) {
    throw InvalidInput(ex.what());
  }
  if (!commands().contains(cfg.command)) throw InvalidInput("unknown command '" + cfg.command + "'");
  if (opt_a->count()) cfg.a = a;
  if (opt_x->count()) cfg.x = x;
  if (opt_b->count()) cfg.b = b;
  if (!degrees.empty()) cfg.degrees = parse_int_list(degrees);
  if (!m_list.empty()) cfg.m_list = parse_int_list(m_list);
  if (!n_list.empty()) cfg.n_list = parse_int_list(n_list);
  if (!z_list.empty()) cfg.z = parse_real_list(z_list);
  cfg.numeric = config_from_environment();
  if (!overrides.empty()) cfg.numeric = apply_overrides(cfg.numeric, overrides);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto it = commands().find(cfg.command);
    if (it == commands().end()) throw InvalidInput("unknown command '" + cfg.command + "'");
    const std::string fmt = cfg.format.empty() ? it->second.default_format : cfg.format;
    const Artifact art = it->second.handler(cfg, fmt);
    if (cfg.output.empty()) {
      out << art.body;
      out.flush();
    } else {
      write_atomic(cfg.output, art.body);
    }
    if (!art.violation.empty()) return report(err, "invariant", kInvariantError, art.violation);
    return kOk;
  } catch (const InvalidInput& ex) {
    return report(err, "parse", kParseError, ex.what());
  } catch (const NumericalFailure& ex) {
    return report(err, "numeric", kNumericError, ex.what());
  } catch (const std::exception& ex) {
    return report(err, "numeric", kNumericError, ex.what());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: ptk <command> [--set SPEC] [--a A] [--x X --b B] [--z LIST] [--degrees LIST]\n"
           "           [--m LIST] [--n LIST] [--alpha A] [--eta E] [--points N]\n"
           "           [--config JSON] [--format csv|json|svg] [--output PATH]\n"
           "commands: density omega capacity green balayage markov schur-witness\n"
           "          schur-counterexample converge\n"
           "environment: PTK_DEFAULTS, JSON object of numeric defaults\n";
    return kOk;
  } catch (const InvalidInput& ex) {
    return report(err, "parse", kParseError, ex.what());
  }
  return run(cfg, out, err);
}

}  // namespace ptk::cli
