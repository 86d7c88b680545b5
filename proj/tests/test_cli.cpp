#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "zyg/cli/config.hpp"
#include "zyg/cli/report.hpp"
#include "zyg/cli/runner.hpp"

using namespace zyg;
using namespace zyg::cli;
using nlohmann::json;

TEST_CASE("config round trip") {
  ExperimentConfig c;
  c.kernel = "nagel-wainger";
  c.theta = 0.75;
  c.symbol = "holder-x3:0.5";
  c.domain.axes[2] = Interval{-1, 3};
  c.depth_min = 1;
  c.depth_max = 3;
  c.resolution = {8, 6, 4};
  c.amplitude = 256.0;
  c.p = 4.0 / 3.0;
  c.q = 4.0;
  c.alpha = 1.0 / c.p.value() - 1.0 / c.q.value();
  c.seed = 42;
  c.out = "somewhere";
  validate(c);
  CHECK(config_from_json(to_json(c)) == c);
  CHECK(config_from_json(json::parse(to_json(c).dump())) == c);
  const ExperimentConfig d;
  CHECK(config_from_json(to_json(d)) == d);
  CHECK(to_json(d)["amplitude"] == "auto");
}

TEST_CASE("config validation is strict") {
  CHECK_THROWS_AS(config_from_json(json{{"kernal", "nagel-wainger"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"theta", "one"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"p", 3.0}, {"q", 2.0}, {"alpha", 0.0}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"p", 2.0}, {"q", 4.0}, {"alpha", 0.5}}), ConfigError);
  CHECK_NOTHROW(config_from_json(json{{"p", 2.0}, {"q", 4.0}, {"alpha", 0.25}}));
  CHECK_THROWS_AS(config_from_json(json{{"amplitude", "large"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"depths", {3, 1}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"resolution", {4, 4}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);
  try {
    config_from_json(json{{"seeds", 1}});
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'seeds'") != std::string::npos);
  }
}

TEST_CASE("config hash") {
  ExperimentConfig a, b;
  CHECK(config_hash(a).size() == 64);
  CHECK(config_hash(a) == config_hash(b));
  b.out = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 2;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("flag parsers") {
  CHECK(parse_depths("0..4") == std::pair{0, 4});
  CHECK(parse_depths("2") == std::pair{2, 2});
  CHECK_THROWS_AS(parse_depths("a..b"), ConfigError);
  CHECK(parse_resolution("8x6x4") == Resolution{8, 6, 4});
  CHECK(parse_resolution("12") == Resolution{12, 12, 12});
  CHECK_THROWS_AS(parse_resolution("8x6"), ConfigError);
}

TEST_CASE("csv tables") {
  CsvTable t("t", {"a", "b"});
  t.add_row({"x,y", csv_number(0.1)});
  CHECK(t.str() == "a,b\n\"x,y\",0.10000000000000001\n");
  CHECK_THROWS(t.add_row({"only"}));
  CHECK(csv_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("runner: norms bmo for x3 at alpha 1/2") {
  ExperimentConfig c;
  c.symbol = "linear-x3";
  c.alpha = 0.5;
  c.depth_min = 0;
  c.depth_max = 2;
  c.resolution = {4, 4, 4};
  const auto r = run(c, Command::NormsBmo);
  REQUIRE(r.tables.size() == 1);
  const auto& row = r.tables[0].rows().at(0);
  CHECK(std::stod(row.at(4)) == doctest::Approx(0.25).epsilon(0.02));
  for (const auto& rec : r.bundle.records) CHECK(rec.config_hash == config_hash(c));
  CHECK(r.invariant_failures.empty());
  CHECK_FALSE(r.bundle.to_json().contains("timestamp"));
  CHECK(run(c, Command::NormsBmo, true).bundle.to_json().contains("timestamp"));
}

TEST_CASE("runner: degenerate kernel fails calibration") {
  ExperimentConfig c;
  c.kernel = "zero-stub";
  CHECK_THROWS_AS(run(c, Command::KernelsCheck), CalibrationFailure);
  c.kernel = "unknown";
  CHECK_THROWS_AS(run(c, Command::KernelsCheck), ConfigError);
}

TEST_CASE("runner: reruns are byte identical") {
  namespace fs = std::filesystem;
  ExperimentConfig c;
  c.symbol = "holder-x3:0.5";
  c.resolution = {4, 4, 4};
  c.depth_max = 1;
  const fs::path base = fs::temp_directory_path() / "zyg_cli_determinism";
  fs::remove_all(base);
  for (const char* leg : {"a", "b"}) write_outputs(run(c, Command::AwfVerify), (base / leg).string());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const char* f : {"awf-verify.json", "awf-verify.csv"}) {
    const auto a = slurp(base / "a" / f);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(base / "b" / f));
  }
  fs::remove_all(base);
}
