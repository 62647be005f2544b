#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "bmv/json_io.hpp"
#include "bmv/presets.hpp"
#include "bmv/scaling_table.hpp"
#include "cli.hpp"
#include "temp_dir.hpp"

using namespace bmv;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kFixture = std::string(BMV_TEST_DATA) + "/hydrology_synthetic.csv";

}  // namespace

TEST_CASE("usage errors and help") {
  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"frobnicate"}).code == cli::kConfigError);
  CHECK(run({"slice", "--no-such-flag"}).code == cli::kConfigError);
  CHECK(run({"mc-validate", "--blocks", "ten"}).code == cli::kConfigError);
}

TEST_CASE("scaling table command matches the library") {
  const auto r = run({"scaling-table", "--n", "10,50,1000,inf"});
  REQUIRE(r.code == cli::kSuccess);
  std::ostringstream expect;
  const auto plans = presets::scaling_plans();
  const std::vector<std::int64_t> ns{10, 50, 1000, scaling_table::kInfinite};
  scaling_table::write(expect, plans, ns);
  CHECK(r.out == expect.str());
  CHECK(run({"scaling-table", "--n", "0"}).code == cli::kConfigError);
  CHECK(run({"scaling-table", "--n", "2.5"}).code == cli::kConfigError);
}

TEST_CASE("plans from a config file") {
  oracle::TempDir dir;
  oracle::write_file(dir / "c.json",
                     R"({"plans": [{"lambda12_sq": 4, "lambda13_sq": 3, "lambda23_sq": 3}],
                         "n": [10, "inf"], "out": "table.csv"})");
  REQUIRE(run({"scaling-table", "--config", (dir / "c.json").string()}).code == cli::kSuccess);
  const std::string table = oracle::read_file(dir / "table.csv");
  CHECK(table.rfind("combination,", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  oracle::write_file(dir / "bad.json", R"({"plans": [{"lambda12_sq": -1, "lambda13_sq": 3, "lambda23_sq": 3}]})");
  CHECK(run({"scaling-table", "--config", (dir / "bad.json").string()}).code ==
        cli::kConfigError);
  oracle::write_file(dir / "broken.json", "{ not json");
  CHECK(run({"scaling-table", "--config", (dir / "broken.json").string()}).code ==
        cli::kConfigError);
}

TEST_CASE("flags override config values") {
  oracle::TempDir dir;
  oracle::write_file(dir / "c.json", R"({"model": "clayton", "n": [10], "grid": "-1:1:3",
                                         "quantiles": [0.5], "out": "slices"})");
  const auto cfg = (dir / "c.json").string();
  REQUIRE(run({"slice", "--config", cfg}).code == cli::kSuccess);
  auto manifest = json::parse(oracle::read_file(dir / "slices/manifest.json"));
  CHECK(manifest["n"] == json::array({10}));
  CHECK(manifest["grid"][0]["count"] == 3);
  CHECK(manifest["model"].get<Vine3Spec>() == presets::clayton_vine());

  const auto other = (dir / "other").string();
  REQUIRE(run({"slice", "--config", cfg, "--n", "20", "--out", other, "--grid", "0:1:2",
               "--grid", "0:2:4", "--model", "gaussian", "--density", "joint"})
              .code == cli::kSuccess);
  manifest = json::parse(oracle::read_file(dir / "other/manifest.json"));
  CHECK(manifest["n"] == json::array({20}));
  CHECK(manifest["grid"][0]["count"] == 2);
  CHECK(manifest["grid"][1]["count"] == 4);
  CHECK(manifest["density"] == "joint");
  CHECK(manifest["quantiles"] == json::array({0.5}));
  CHECK(manifest["model"].get<Vine3Spec>() == presets::gaussian_vine());
}

TEST_CASE("inline and file models") {
  oracle::TempDir dir;
  const json vine = presets::river_vine();
  oracle::write_file(dir / "vine.json", vine.dump());
  oracle::write_file(dir / "c.json",
                     json{{"model", {{"c12", {{"family", "gumbel"}, {"tau", 0.4}}},
                                     {"c23", {{"family", "frank"}, {"parameter", -3}}},
                                     {"c13_2", {{"family", "independence"}}}}},
                          {"n", 2},
                          {"grid", {{"min", -1}, {"max", 1}, {"count", 2}}},
                          {"out", "s"}}
                         .dump());
  CHECK(run({"slice", "--config", (dir / "c.json").string()}).code == cli::kSuccess);
  CHECK(run({"slice", "--config", (dir / "c.json").string(), "--model",
             (dir / "vine.json").string()})
            .code == cli::kSuccess);
  const auto manifest = json::parse(oracle::read_file(dir / "s/manifest.json"));
  CHECK(manifest["model"].get<Vine3Spec>() == presets::river_vine());
  CHECK(run({"slice", "--config", (dir / "c.json").string(), "--model", "nonsense"}).code ==
        cli::kConfigError);
}

TEST_CASE("scaled slices take family overrides") {
  oracle::TempDir dir;
  const auto r = run({"scaled-slice", "--model", "clayton-scaled", "--families",
                      "gaussian,frank,gumbel", "--n", "10", "--grid", "0:1:2", "--out",
                      dir.path().string()});
  REQUIRE(r.code == cli::kSuccess);
  const auto manifest = json::parse(oracle::read_file(dir / "manifest.json"));
  CHECK(manifest["model"]["families"] == json::array({"gaussian", "frank", "gumbel"}));
  CHECK(manifest["slices"][0]["vine"]["c23"]["family"] == "frank");
  CHECK(run({"scaled-slice", "--model", "clayton", "--out", dir.path().string()}).code ==
        cli::kConfigError);
  CHECK(run({"scaled-slice", "--model", "clayton-scaled", "--n", "1", "--out",
             dir.path().string()})
            .code == cli::kConfigError);
}

TEST_CASE("numerical failure maps to its own exit code") {
  oracle::TempDir dir;
  oracle::write_file(dir / "c.json", R"({"model": "gaussian", "n": [3], "grid": "-1:1:2",
      "quadrature": {"abs_tol": 1e-300, "rel_tol": 1e-300, "max_subdivisions": 1}})");
  const auto r = run({"slice", "--config", (dir / "c.json").string(), "--out",
                      (dir / "o").string()});
  CHECK(r.code == cli::kNumericalError);
  CHECK(r.err.find("numerical") != std::string::npos);
}

TEST_CASE("fixture regenerates byte for byte") {
  oracle::TempDir dir;
  REQUIRE(run({"simulate", "--model", "river", "--count", "5000", "--seed", "2176", "--out",
               (dir / "x.csv").string()})
              .code == cli::kSuccess);
  CHECK(oracle::read_file(dir / "x.csv") == oracle::read_file(kFixture));
}

TEST_CASE("fit recovers the fixture model") {
  const auto r = run({"fit", "--data", kFixture, "--families", "frank,frank,gaussian"});
  REQUIRE(r.code == cli::kSuccess);
  const auto j = json::parse(r.out);
  CHECK(j["rows"] == 5000);
  CHECK(std::abs(j["tau"]["c12"].get<double>() - 0.76) <= 0.05);
  CHECK(std::abs(j["tau"]["c23"].get<double>() - 0.23) <= 0.05);
  CHECK(std::abs(j["tau"]["c13_2"].get<double>() + 0.18) <= 0.05);
  CHECK(j["vine"]["c13_2"]["family"] == "gaussian");

  const auto clayton = run({"fit", "--data", kFixture, "--families", "clayton,frank,gaussian"});
  CHECK(clayton.code == cli::kSuccess);
  const auto neg = run({"fit", "--data", kFixture, "--families", "frank,frank,clayton"});
  CHECK(neg.code == cli::kConfigError);
  CHECK(neg.err.find("pair (1,3;2)") != std::string::npos);
  CHECK(run({"fit", "--data", kFixture, "--families", "frank,frank"}).code == cli::kConfigError);
  CHECK(run({"fit", "--data", kFixture, "--families", "frank,frank,student"}).code ==
        cli::kConfigError);
  CHECK(run({"fit", "--families", "frank,frank,frank"}).code == cli::kConfigError);
}

TEST_CASE("mc-validate is reproducible") {
  const std::vector<std::string> args{"mc-validate", "--model", "independence", "--n", "5",
                                      "--blocks",    "5000",    "--seed",       "3"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == cli::kSuccess);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["reports"][0]["pass"] == true);
  CHECK(run({"mc-validate", "--model", "independence", "--blocks", "10"}).code ==
        cli::kConfigError);
}
