#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ptk/errors.hpp"
#include "ptk/json_io.hpp"
#include "ptk_cli/cli.hpp"
#include "ptk_cli/svg.hpp"

using namespace ptk;
using namespace ptk::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "ptk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; stdout and the exit status.
std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(PTK_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string text;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) text += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ptk_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("range syntax") {
  CHECK(parse_int_list("5") == std::vector<int>{5});
  CHECK(parse_int_list("5,10,20") == std::vector<int>{5, 10, 20});
  CHECK(parse_int_list("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_int_list("2..64:x2") == std::vector<int>{2, 4, 8, 16, 32, 64});
  CHECK(parse_int_list("3..30:x3,63") == std::vector<int>{3, 9, 27, 63});
  CHECK_THROWS_AS(parse_int_list("5..2"), InvalidInput);
  CHECK_THROWS_AS(parse_int_list("2..8:x1"), InvalidInput);
  CHECK_THROWS_AS(parse_int_list("a"), InvalidInput);
  CHECK_THROWS_AS(parse_int_list(""), InvalidInput);
  CHECK(format_real(0.1) == "0.10000000000000001");
}

TEST_CASE("omega command") {
  const Outcome o = call({"omega", "--set", R"({"intervals":[[-2,1]]})", "--a", "1"});
  REQUIRE(o.code == 0);
  const Json j = Json::parse(o.out);
  CHECK(j.at("omega").get<double>() == doctest::Approx(0.1837762985).epsilon(1e-10));
}

TEST_CASE("markov command CSV") {
  const Outcome o = call({"markov", "--set", R"({"intervals":[[-1,1]]})", "--a", "1", "--degrees", "5"});
  REQUIRE(o.code == 0);
  std::istringstream in(o.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "degree,value,ratio,limit_constant");
  double d, v, r, l;
  char c;
  std::istringstream rs(row);
  rs >> d >> c >> v >> c >> r >> c >> l;
  CHECK(d == 5);
  CHECK(v == doctest::Approx(25).epsilon(1e-6));
  CHECK(r == doctest::Approx(1).epsilon(1e-6));
  CHECK(l == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("converge command on the Cantor set") {
  const Outcome o = call({"converge", "--set", R"({"cantor":{"level":6,"ratio":0.3333333333333333}})", "--a", "1",
                          "--m", "2..64", "--format", "json"});
  REQUIRE(o.code == 0);
  const auto rows = convergence_rows_from_json(Json::parse(o.out).at("rows"));
  REQUIRE(rows.size() == 63);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].omega >= rows[i - 1].omega * (1 - 1e-12));
}

TEST_CASE("set spec from a file") {
  const auto path = scratch("set.json");
  std::ofstream(path) << R"({"intervals":[[-1,-0.5],[0.5,1]]})";
  const Outcome o = call({"capacity", "--set", path.string()});
  REQUIRE(o.code == 0);
  const EquilibriumRecord r = equilibrium_record_from_json(Json::parse(o.out));
  CHECK(r.cap == doctest::Approx(std::sqrt(0.75) / 2).epsilon(1e-10));
}

TEST_CASE("outputs are deterministic and written atomically") {
  const auto path = scratch("density.csv");
  std::filesystem::remove(path);
  const std::vector<std::string> args{"density", "--set", R"({"intervals":[[-1,-0.5],[0.5,1]]})",
                                      "--points", "50", "--output", path.string()};
  REQUIRE(call(args).code == 0);
  std::ifstream first(path);
  const std::string a((std::istreambuf_iterator<char>(first)), {});
  REQUIRE(call(args).code == 0);
  std::ifstream second(path);
  const std::string b((std::istreambuf_iterator<char>(second)), {});
  CHECK(a == b);
  CHECK(a.rfind("component,t,density\n", 0) == 0);
  for (const auto& entry : std::filesystem::directory_iterator(path.parent_path()))
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  const Outcome j1 = call({"markov", "--set", R"({"intervals":[[-2,1]]})", "--a", "1", "--degrees", "4,8", "--format", "json"});
  const Outcome j2 = call({"markov", "--set", R"({"intervals":[[-2,1]]})", "--a", "1", "--degrees", "4,8", "--format", "json"});
  CHECK(j1.out == j2.out);
}

TEST_CASE("every command runs") {
  const std::string two = R"({"intervals":[[-1,-0.5],[0.5,1]]})";
  CHECK(call({"density", "--set", two, "--points", "10", "--format", "json"}).code == 0);
  CHECK(call({"green", "--set", two, "--z", "2,0.7,0"}).code == 0);
  CHECK(call({"balayage", "--x", "2", "--b", "-1", "--a", "1", "--points", "20"}).code == 0);
  CHECK(call({"schur-witness", "--n", "100", "--format", "csv", "--points", "20"}).code == 0);
  CHECK(call({"schur-counterexample", "--n", "10,20"}).code == 0);
  const Outcome b = call({"balayage", "--x", "2", "--b", "-1", "--a", "1", "--points", "5"});
  CHECK(Json::parse(b.out).at("mass").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  const Outcome w = call({"schur-witness", "--alpha", "0.5", "--n", "400"});
  REQUIRE(w.code == 0);
  const AuditReport r = audit_report_from_json(Json::parse(w.out).at("reports").at(0));
  CHECK(r.local_ok);
  CHECK(r.point_ratio == doctest::Approx(0.866).epsilon(1e-3));
}

TEST_CASE("svg output") {
  const Outcome d = call({"density", "--set", R"({"intervals":[[-1,-0.5],[0.5,1]]})", "--format", "svg"});
  REQUIRE(d.code == 0);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = d.out.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
  CHECK(count == 2);
  const std::string one = emit_svg({{"s", {{0, 0}, {1, 1}}}}, {"x", "y", ""});
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("version=\"1.1\"") != std::string::npos);
  CHECK(one.find("<polyline") == one.rfind("<polyline"));
  CHECK(emit_svg({{"s", {{0, 0}, {1, 1}}}}, {"x", "y", ""}) == one);
  CHECK_THROWS_AS(emit_svg({}, {}), InvalidInput);
  CHECK_THROWS_AS(emit_svg({{"s", {}}}, {}), InvalidInput);
  const Outcome m = call({"markov", "--set", R"({"intervals":[[-2,1]]})", "--a", "1", "--degrees", "4,8", "--format", "svg"});
  CHECK(m.out.find("2 pi^2 Omega^2") != std::string::npos);
}

TEST_CASE("exit codes and error records") {
  const Outcome parse = call({"omega", "--set", R"({"intervals":[[-2,1]])", "--a", "1"});
  CHECK(parse.code == kParseError);
  CHECK(Json::parse(parse.err).at("error").at("kind") == "parse");
  CHECK(call({"frobnicate"}).code == kParseError);
  CHECK(call({"omega", "--set", R"({"intervals":[[-2,1]]})"}).code == kParseError);
  CHECK(call({"omega", "--set", R"({"intervals":[[-2,1]]})", "--a", "0"}).code == kParseError);
  CHECK(call({"markov", "--set", R"({"intervals":[[-2,1]]})", "--a", "1", "--degrees", "5..x"}).code == kParseError);
  CHECK(call({"omega", "--set", R"({"intervals":[[-2,1]]})", "--a", "1", "--config", R"({"nope":1})"}).code ==
        kParseError);
  const Outcome numeric = call({"capacity", "--set", R"({"intervals":[[-1,-0.5],[0.5,1],[2,3]]})", "--config",
                                R"({"newton_max_iter":1})"});
  CHECK(numeric.code == kNumericError);
  CHECK(Json::parse(numeric.err).at("error").at("kind") == "numeric");
  const Outcome inv = call({"schur-witness", "--alpha", "0.9", "--n", "16"});
  CHECK(inv.code == kInvariantError);
  CHECK(Json::parse(inv.err).at("error").at("exit_code") == 4);
}

TEST_CASE("binary exit status") {
  CHECK(shell(R"(omega --set '{"intervals":[[-2,1]]}' --a 1)").first == 0);
  CHECK(shell("omega --set '{bad' --a 1").first == 2);
  CHECK(shell(R"(capacity --set '{"intervals":[[-1,-0.5],[0.5,1],[2,3]]}' --config '{"newton_max_iter":1}')").first == 3);
  CHECK(shell("schur-witness --alpha 0.9 --n 16").first == 4);
  CHECK(shell("--help").first == 0);
}

TEST_CASE("environment defaults") {
  setenv("PTK_DEFAULTS", R"({"max_degree": 4})", 1);
  const Outcome o = call({"markov", "--set", R"({"intervals":[[-1,1]]})", "--a", "1", "--degrees", "5"});
  unsetenv("PTK_DEFAULTS");
  CHECK(o.code == kParseError);
  setenv("PTK_DEFAULTS", "{oops", 1);
  CHECK(call({"omega", "--set", R"({"intervals":[[-2,1]]})", "--a", "1"}).code == kParseError);
  unsetenv("PTK_DEFAULTS");
}
