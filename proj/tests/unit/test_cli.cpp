#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "antisym/cli.hpp"
#include "antisym/io.hpp"

using namespace antisym;
using nlohmann::json;

namespace {

int run_cli(std::vector<std::string> args, std::string& out, std::string& err) {
  args.insert(args.begin(), "antisym");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  err = e.str();
  return code;
}

std::string temp_path(const char* name) { return std::string(P_tmpdir) + "/antisym_test_" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(2.0) == "2");
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-7}) CHECK(std::stod(format_double(v)) == v);
  }

  TEST_CASE("config round trip") {
    RunConfig c;
    c.command = Command::harnack_battery;
    c.params = Params(2, 0.25);
    c.quad = quad::QuadSpec::defaults(2);
    c.quad.rel_tol = 1e-7;
    c.field = make::antisym_gaussian(Point{1.0, 0.5}, 0.3);
    c.seeds = {3, 5, 8};
    c.output_path = "out.csv";
    c.format = OutputFormat::csv;
    c.x = {0.2, 0.1};
    c.ks = {1, 3};
    const json j = to_json(c);
    const RunConfig d = config_from_json(j);
    CHECK(to_json(d) == j);
  }

  TEST_CASE("constants subcommand") {
    std::string out, err;
    REQUIRE(run_cli({"constants", "--n", "1", "--s", "0.5"}, out, err) == 0);
    const json j = json::parse(out);
    CHECK(j["result"]["c_ns"].get<double>() == doctest::Approx(0.3183099).epsilon(1e-7));
    CHECK(j["result"]["gamma_ns"].get<double>() == doctest::Approx(0.3183099).epsilon(1e-7));
    CHECK(j["result"]["tilde_c"].get<double>() == doctest::Approx(0.3183099).epsilon(1e-7));
    CHECK(j["result"]["halfspace_integral"].get<double>() == doctest::Approx(1.0));
  }

  TEST_CASE("usage errors exit with status 2") {
    std::string out, err;
    CHECK(run_cli({"constants", "--s", "0.99"}, out, err) == 2);
    CHECK(run_cli({"constants", "--n", "4"}, out, err) == 2);
    CHECK(run_cli({"nonsense"}, out, err) == 2);
    const std::string bad = temp_path("bad.json");
    std::ofstream(bad) << "{ not json";
    CHECK(run_cli({"--config", bad}, out, err) == 2);
    CHECK(err.find("malformed") != std::string::npos);
    std::remove(bad.c_str());
  }

  TEST_CASE("fraclap emits value, error bound and route") {
    std::string out, err;
    REQUIRE(run_cli({"fraclap", "--x", "0.5", "--field", R"({"family":"Monomial_x1","params":{"dim":1}})"}, out,
                    err) == 0);
    const json j = json::parse(out)["result"];
    CHECK(std::abs(j["value"].get<double>()) < 1e-7);
    CHECK(j["route"] == "antisymmetric");
    CHECK(j.contains("error_bound"));
  }

  TEST_CASE("config file drives the run and CSV output is byte-identical") {
    const std::string cfg = temp_path("cfg.json"), a = temp_path("a.csv"), b = temp_path("b.csv");
    std::ofstream(cfg) << R"({"command":"harnack_battery","params":{"n":1,"s":0.5},"seeds":[1,2],"grid_n":16,"format":"csv"})";
    std::string out, err;
    REQUIRE(run_cli({"--config", cfg, "--output", a}, out, err) == 0);
    REQUIRE(run_cli({"--config", cfg, "--output", b}, out, err) == 0);
    auto slurp = [](const std::string& p) {
      std::ifstream f(p);
      std::stringstream ss;
      ss << f.rdbuf();
      return ss.str();
    };
    const std::string sa = slurp(a);
    CHECK(sa == slurp(b));
    CHECK(sa.rfind("seed,sup_q,inf_q,ratio,anorm,c_lower,c_upper\n", 0) == 0);
    for (const auto& p : {cfg, a, b}) std::remove(p.c_str());
  }
}
