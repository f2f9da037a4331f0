#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fockgdo/cli/cli.hpp"
#include "fockgdo/error.hpp"

using fockgdo::cli::run_cli;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("fockgdo_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("complex grammar") {
  using fockgdo::cli::parse_complex;
  CHECK(parse_complex("1") == std::complex<double>(1, 0));
  CHECK(parse_complex("1+0.5i") == std::complex<double>(1, 0.5));
  CHECK(parse_complex("-1-2i") == std::complex<double>(-1, -2));
  CHECK(parse_complex("2i") == std::complex<double>(0, 2));
  CHECK(parse_complex("-i") == std::complex<double>(0, -1));
  CHECK(parse_complex("1e-3+2e+1i") == std::complex<double>(1e-3, 20));
  CHECK(std::abs(parse_complex("2@1.5707963267948966") - std::complex<double>(0, 2)) < 1e-15);
  CHECK_THROWS_AS(parse_complex("1+x"), fockgdo::InputError);
  CHECK_THROWS_AS(parse_complex(""), fockgdo::InputError);
  CHECK_THROWS_AS(parse_complex("1+2j"), fockgdo::InputError);
}

TEST_CASE("state tables") {
  auto r = run({"state", "--family", "binomial", "--eta", "0.5", "--M", "1", "--dim", "8"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["config"]["dim"] == 8);
  CHECK(j["amplitudes"].size() == 8);
  CHECK(j["amplitudes"][0]["abs2"].get<double>() == doctest::Approx(0.5));
  CHECK(j["amplitudes"][1]["abs2"].get<double>() == doctest::Approx(0.5));
  CHECK(j["amplitudes"][2]["abs2"] == 0.0);
  CHECK(j["support"]["n_max"] == 1);

  auto c = run({"state", "--family", "coherent", "--alpha", "1", "--dim", "64", "--format", "csv"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("n,re,im,abs2\n") != std::string::npos);
  CHECK(c.out.find("# leak=") != std::string::npos);

  auto n = run({"state", "--family", "nnbs", "--eta", "0.3", "--M", "3", "--dim", "128"});
  REQUIRE(n.code == 0);
  const auto nj = json::parse(n.out);
  for (int k = 0; k < 3; ++k) CHECK(nj["amplitudes"][k]["abs2"] == 0.0);
  // too short for the 1e-12 tail bound
  auto short_dim = run({"state", "--family", "nnbs", "--eta", "0.3", "--M", "3", "--dim", "64"});
  CHECK(short_dim.code == 2);
  CHECK(short_dim.err.find("increase dim") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  auto pass = run({"verify", "--family", "pacs", "--alpha", "1+0.5i", "--M", "2", "--dim", "128"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("Eqs. 48-49") != std::string::npos);
  auto kerr = run({"verify", "--family", "kerr", "--alpha", "1", "--theta", "0.3", "--dim", "64"});
  CHECK(kerr.code == 0);
  CHECK(kerr.out.find("\"Eq. 62\"") != std::string::npos);
  auto bad = run({"verify", "--family", "binomial", "--eta", "1.5", "--M", "4"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("eta must lie in (0,1)") != std::string::npos);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
  auto fail = run({"verify", "--family", "binomial", "--eta", "0.5", "--M", "4", "--tol", "1e-300", "--oracle-tol",
                   "1e-300"});
  CHECK(fail.code == 1);
  CHECK(json::parse(fail.out)["passed"] == false);
}

TEST_CASE("input errors") {
  CHECK(run({"verify", "--family", "binomial", "--eta", "0.5", "--M", "4", "--bogus", "1"}).code == 2);
  CHECK(run({"verify", "--family", "binomial", "--eta", "0.5"}).code == 2);
  CHECK(run({"verify", "--family", "binomial", "--eta", "abc", "--M", "4"}).code == 2);
  CHECK(run({"verify", "--family", "warp", "--eta", "0.5"}).code == 2);
  CHECK(run({"verify", "--family", "binomial", "--eta", "0.5", "--M", "4", "--r", "1"}).code == 2);
  CHECK(run({"verify", "--family", "binomial", "--eta", "0.5", "--M", "4", "--format", "xml"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config echo and byte-identical reruns") {
  const std::vector<std::string> args = {"verify", "--family", "svs", "--r", "0.8", "--theta", "0.5", "--dim", "128"};
  auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["config"]["subcommand"] == "verify");
  CHECK(j["config"]["params"]["r"] == 0.8);
  CHECK(j["config"]["tolerances"]["residual"] == 1e-10);
  auto csv1 = run({"verify", "--family", "rbs", "--theta", "0.7", "--M", "4", "--format", "csv"});
  auto csv2 = run({"verify", "--family", "rbs", "--theta", "0.7", "--M", "4", "--format", "csv"});
  CHECK(csv1.out == csv2.out);
  CHECK(csv1.out.rfind("# tool=fockgdo\n", 0) == 0);
}

TEST_CASE("structure-fn") {
  auto b = run({"structure-fn", "--family", "binomial", "--eta", "0.5", "--M", "4", "--compare-paper"});
  REQUIRE(b.code == 0);
  const auto j = json::parse(b.out);
  const double want[] = {0, 4, 6, 6, 4};
  REQUIRE(j["rows"].size() == 5);
  for (int n = 0; n < 5; ++n) {
    CHECK(j["rows"][n]["F_derived"].get<double>() == doctest::Approx(want[n]).epsilon(1e-12));
    CHECK(j["rows"][n]["match"] == false);
  }
  auto h = run({"structure-fn", "--family", "harmonic", "--dim", "6"});
  const auto hj = json::parse(h.out);
  for (int n = 0; n < 6; ++n) CHECK(hj["rows"][n]["F_derived"].get<double>() == doctest::Approx(n));
  CHECK_FALSE(hj["rows"][0].contains("F_paper"));
  auto r = run({"structure-fn", "--family", "rbs", "--theta", "0.7", "--M", "4", "--compare-paper"});
  const auto rj = json::parse(r.out);
  bool non_real = false;
  for (const auto& row : rj["rows"]) non_real = non_real || (row["paper_finite"] == true && row["paper_real"] == false);
  CHECK(non_real);
}

TEST_CASE("batch") {
  const auto dir = scratch("batch");
  write(dir / "empty.json", "[]");
  auto e = run({"batch", (dir / "empty.json").string(), "--out-dir", (dir / "empty_out").string()});
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["entries"].empty());
  CHECK(fs::exists(dir / "empty_out" / "summary.json"));

  write(dir / "mixed.json", R"([
    {"family": "binomial", "params": {"eta": 0.5, "M": 4}, "dim": 12},
    {"family": "binomial", "params": {"eta": 1.5, "M": 4}},
    {"family": "coherent", "params": {"alpha": {"re": 1.0, "im": 0.0}}, "dim": 64}
  ])");
  auto m = run({"batch", (dir / "mixed.json").string(), "--out-dir", (dir / "mixed_out").string(), "--threads", "3"});
  CHECK(m.code == 2);
  const auto s = json::parse(m.out);
  CHECK(s["entries"][0]["status"] == "passed");
  CHECK(s["entries"][1]["status"] == "input-error");
  CHECK(s["entries"][1]["message"].get<std::string>().find("eta must lie in (0,1)") != std::string::npos);
  CHECK(s["entries"][2]["status"] == "passed");
  for (int k = 0; k < 3; ++k) CHECK(fs::exists(dir / "mixed_out" / s["entries"][k]["file"].get<std::string>()));
  for (const auto& p : fs::directory_iterator(dir / "mixed_out")) CHECK(p.path().extension() != ".tmp");

  write(dir / "fail.json", R"([{"family": "binomial", "params": {"eta": 0.5, "M": 4}, "tolerances": {"oracle": 1e-300, "residual": 1e-300}}])");
  CHECK(run({"batch", (dir / "fail.json").string(), "--out-dir", (dir / "fail_out").string()}).code == 1);
  CHECK(run({"batch", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("batch over the acceptance grid, serial and threaded outputs agree") {
  const auto dir = scratch("grid");
  const std::string manifest = FOCKGDO_SOURCE_DIR "/manifests/acceptance_grid.json";
  auto a = run({"batch", manifest, "--out-dir", (dir / "a").string(), "--threads", "1"});
  auto b = run({"batch", manifest, "--out-dir", (dir / "b").string(), "--threads", "4"});
  REQUIRE(a.code == 0);
  const auto s = json::parse(a.out);
  CHECK(s["families_passed"] == "15/15");
  CHECK(a.out == b.out);
  for (const auto& p : fs::directory_iterator(dir / "a")) {
    std::ifstream x(p.path()), y(dir / "b" / p.path().filename());
    std::stringstream xs, ys;
    xs << x.rdbuf();
    ys << y.rdbuf();
    CHECK(xs.str() == ys.str());
  }
}
