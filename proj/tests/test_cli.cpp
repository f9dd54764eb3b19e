#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biharm/cli.hpp"
#include "biharm/error.hpp"

using namespace biharm;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "biharm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("biharm_test_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("verify reports") {
  const Result r = run_cli({"verify", "pr1", "--a", "1", "--b", "0", "--points", "10"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["entry"] == "pr1");
  CHECK(j["model"] == "H2xR");
  CHECK(j["points"].size() == 10);
  CHECK(j["aggregate"]["verdict"] == "proper_biharmonic_candidate");
  CHECK(j["aggregate"]["expected"] == "proper_biharmonic_candidate");
  CHECK(j["aggregate"]["max_abs_r1"].get<double>() < 1e-7);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "entry", "params", "model", "sample",
                                         "tolerances", "points", "aggregate"});
  for (const char* k : {"p", "r1", "r2", "tension", "K_N", "jac", "rc", "fiber"}) {
    CHECK(j["points"][0].contains(k));
  }
  CHECK(j["points"][0]["rc"].size() == 7);

  const Result nil = run_cli({"verify", "nil", "--points", "20"});
  CHECK(nil.code == 0);
  CHECK(json::parse(nil.out)["aggregate"]["verdict"] == "not_biharmonic");

  const Result flat = run_cli({"verify", "flat", "--format", "csv", "--points", "4"});
  CHECK(flat.code == 0);
  CHECK(std::count(flat.out.begin(), flat.out.end(), '\n') == 5);
}

TEST_CASE("verdict mismatch exits 1") {
  // A loose tolerance turns the Nil residuals into a "candidate".
  const Result r = run_cli({"verify", "nil", "--tol-b", "10", "--points", "5"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["aggregate"]["verdict"] == "proper_biharmonic_candidate");
}

TEST_CASE("sweeps are deterministic") {
  const Result a = run_cli({"sweep", "--points", "8"});
  const Result b = run_cli({"sweep", "--points", "8"});
  const Result c = run_cli({"sweep", "--points", "8", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.rfind("entry,m,l,a,b,model,expected,verdict,", 0) == 0);

  const Result d = run_cli({"sweep", "--points", "8", "--seed", "2"});
  CHECK(d.out != a.out);
}

TEST_CASE("sweep grids from lists") {
  const Result r = run_cli({"sweep", "bcv-z", "--m", "-1,-0.25,0.5", "--l", "0,2", "--points", "5"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
  CHECK(r.out.find("not_biharmonic") == std::string::npos);

  const Result j = run_cli({"sweep", "pr1", "--a", "1,2", "--b", "0", "--points", "5", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)["cells"].size() == 2);
}

TEST_CASE("identities") {
  const Result r = run_cli({"identities", "nil", "--points", "20"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["results"][0]["pass"] == true);
  CHECK(j["results"][0]["max_jac"].get<double>() < 1e-8);

  const Result b = run_cli({"identities", "--bcv", "-0.25", "0", "--points", "10"});
  CHECK(b.code == 0);
  for (const auto& row : json::parse(b.out)["results"]) CHECK(row["pass"] == true);

  const Result csv = run_cli({"identities", "pr1", "--a", "2", "--b", "1", "--points", "5",
                              "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(csv.out.find("a=2;b=1") != std::string::npos);
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run_cli({"verify", "sphere"}).code == 2);
  CHECK(run_cli({"launch", "pr1"}).code == 2);
  CHECK(run_cli({"verify", "pr1", "--tol-b", "-1"}).code == 2);
  CHECK(run_cli({"verify", "pr1", "--format", "xml"}).code == 2);
  CHECK(run_cli({"verify", "pr1", "--a", "x"}).code == 2);
  CHECK(run_cli({"verify", "pr1", "--frobnicate"}).code == 2);
  CHECK(run_cli({"verify", "pr1", "--config", "/nonexistent/biharm.conf"}).code == 2);
  const auto bad = temp_file("bad.conf", "entry = pr1\nflavour = mild\n");
  const Result r = run_cli({"verify", "--config", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("flavour") != std::string::npos);
  std::filesystem::remove(bad);
}

TEST_CASE("config files and command-line overrides") {
  const auto path = temp_file("ok.conf",
                              "# pr1 check\n"
                              "command = verify\n"
                              "entry = pr1\n"
                              "a = 2   # scale\n"
                              "b = 3\n"
                              "points = 5\n"
                              "seed = 4\n");
  const Result r = run_cli({"--config", path.string(), "verify"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["points"].size() == 5);
  CHECK(j["params"]["a"] == 2.0);
  CHECK(j["sample"]["seed"] == 4);

  const Result o = run_cli({"verify", "--config", path.string(), "--points", "7", "--b", "1"});
  CHECK(o.code == 0);
  const json k = json::parse(o.out);
  CHECK(k["points"].size() == 7);
  CHECK(k["params"]["b"] == 1.0);
  std::filesystem::remove(path);

  cli::RunConfig c;
  cli::apply_config_text("m = -1, 0.5\nbcv = -0.25 1\n", c);
  CHECK(c.m == std::vector<double>{-1.0, 0.5});
  REQUIRE(c.bcv.has_value());
  CHECK(c.bcv->l == 1.0);
  CHECK_THROWS_AS(cli::apply_config_text("points\n", c), Error);
}

TEST_CASE("custom specs") {
  const auto harmonic = temp_file("custom.conf",
                                  "g11 = 1\ng22 = 1\ng33 = 1\n"
                                  "pi1 = x\npi2 = y\n");
  const Result r = run_cli({"verify", "--config", harmonic.string(), "--points", "5"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["aggregate"]["verdict"] == "harmonic");
  std::filesystem::remove(harmonic);

  // The h2r-exp example written out by hand, with m supplied on the command line.
  const auto exp_conf = temp_file("exp.conf",
                                  "g11 = exp(2*sqrt(-4*m)*y)\ng22 = 1\ng33 = 1\n"
                                  "pi1 = y\npi2 = z\n");
  const Result e = run_cli({"verify", "--config", exp_conf.string(), "--m", "-1", "--points", "5"});
  CHECK(e.code == 0);
  const json je = json::parse(e.out);
  CHECK(je["aggregate"]["verdict"] == "proper_biharmonic_candidate");
  CHECK(je["aggregate"]["max_tension"].get<double>() == doctest::Approx(2.0).epsilon(1e-10));
  std::filesystem::remove(exp_conf);

  const auto scaled = temp_file("scaled.conf",
                                "g11 = 1\ng22 = 1\ng33 = 1\npi1 = x\npi2 = 2*y\n");
  CHECK(run_cli({"verify", "--config", scaled.string(), "--points", "5"}).code == 3);
  std::filesystem::remove(scaled);

  const auto broken = temp_file("broken.conf", "g11 = 1 +\ng22 = 1\ng33 = 1\npi1 = x\npi2 = y\n");
  CHECK(run_cli({"verify", "--config", broken.string()}).code == 2);
  std::filesystem::remove(broken);

  const auto indefinite = temp_file("indef.conf", "g11 = -1\ng22 = 1\ng33 = 1\npi1 = x\npi2 = y\n");
  CHECK(run_cli({"verify", "--config", indefinite.string()}).code == 2);
  std::filesystem::remove(indefinite);
}

TEST_CASE("output paths") {
  const auto path = std::filesystem::temp_directory_path() / "biharm_test_out.json";
  const Result r = run_cli({"verify", "flat", "--points", "3", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["aggregate"]["verdict"] == "harmonic");
  std::filesystem::remove(path);
}
