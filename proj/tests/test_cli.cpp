#include <doctest.h>

#include <sstream>

#include "coldgen/cli.hpp"
#include "support.hpp"

using namespace coldgen;
using coldgen::testing::read_file;
using coldgen::testing::ScratchDir;
using coldgen::testing::write_file;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "coldgen");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli baseline on the default board") {
  ScratchDir dir;
  const auto r = run_cli({"baseline", "--out", dir.path().string()});
  REQUIRE(r.code == cli::ok);
  for (const char* f : {"baseline_mask.csv", "baseline_temperature.csv", "baseline_temperature.pgm",
                        "baseline_report.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  const auto j = nlohmann::json::parse(read_file(dir / "baseline_report.json"));
  CHECK(j["metrics"]["max_c"].get<double>() >= j["metrics"]["mean_c"].get<double>());
  CHECK(j["config"]["baseline"]["pitch"] == 0.004);
  CHECK(r.out.find("baseline: max") != std::string::npos);
}

TEST_CASE("cli config errors exit 1 with a diagnostic") {
  ScratchDir dir;
  write_file(dir / "bad.json", R"({"grid": {"dx": -1}})");
  auto r = run_cli({"baseline", "--config", (dir / "bad.json").string(), "--out", (dir / "o").string()});
  CHECK(r.code == cli::config_error);
  CHECK(r.err.find("grid.dx") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir / "o"));

  r = run_cli({"baseline", "--config", (dir / "missing.json").string()});
  CHECK(r.code == cli::config_error);

  r = run_cli({"frobnicate"});
  CHECK(r.code == cli::config_error);
  r = run_cli({});
  CHECK(r.code == cli::config_error);
}

TEST_CASE("cli generate") {
  ScratchDir dir;
  write_file(dir / "c.json", coldgen::testing::small_config_json);
  const std::string cfg = (dir / "c.json").string();

  const auto a = run_cli({"generate", "--config", cfg, "--out", (dir / "a").string(), "--seed", "7"});
  const auto b = run_cli({"generate", "--config", cfg, "--out", (dir / "b").string(), "--seed", "7"});
  REQUIRE(a.code == cli::ok);
  REQUIRE(b.code == cli::ok);
  for (const char* f : {"generative_mask.csv", "generative_temperature.csv", "generative_temperature.pgm",
                        "generative_v.csv", "generative_report.json"}) {
    CHECK(std::filesystem::exists(dir / "a" / f));
  }
  CHECK(read_file(dir / "a" / "generative_mask.csv") == read_file(dir / "b" / "generative_mask.csv"));

  const auto j = nlohmann::json::parse(read_file(dir / "a" / "generative_report.json"));
  CHECK(j["history"].size() == 3);
  CHECK(j["config"]["loop"]["seed"] == 7);

  // Seed flag beats the config.
  const auto c = run_cli({"generate", "--config", cfg, "--out", (dir / "c").string(), "--seed", "8"});
  REQUIRE(c.code == cli::ok);
  CHECK(read_file(dir / "a" / "generative_v.csv") != read_file(dir / "c" / "generative_v.csv"));

  // Final mask keeps every pinned cell.
  const auto parsed = load_config(cfg);
  const auto mask = import_mask_csv(dir / "a" / "generative_mask.csv");
  const auto pinned = build_pinned_sets(parsed.grid, parsed.layout());
  for (const auto cell : pinned.combined()) {
    CHECK(mask.at(cell.i, cell.j));
  }
}

TEST_CASE("cli compare reports consistent deltas") {
  ScratchDir dir;
  write_file(dir / "c.json", coldgen::testing::small_config_json);
  const auto r = run_cli({"compare", "--config", (dir / "c.json").string(), "--out", dir.path().string()});
  REQUIRE(r.code == cli::ok);
  CHECK_FALSE(std::filesystem::exists(dir / "baseline_report.json"));
  const auto j = nlohmann::json::parse(read_file(dir / "comparison_report.json"));
  CHECK(j["design_a"]["name"] == "baseline");
  CHECK(j["design_b"]["name"] == "generative");
  CHECK(j["delta_max_c"].get<double>() == j["design_a"]["metrics"]["max_c"].get<double>() -
                                               j["design_b"]["metrics"]["max_c"].get<double>());
  CHECK(j["delta_mean_c"].get<double>() == j["design_a"]["metrics"]["mean_c"].get<double>() -
                                                j["design_b"]["metrics"]["mean_c"].get<double>());
}

TEST_CASE("cli solve evaluates an external mask") {
  ScratchDir dir;
  write_file(dir / "c.json", coldgen::testing::small_config_json);
  const auto cfg = load_config(dir / "c.json");
  export_mask_csv(ChannelMask(cfg.grid, true), dir / "mask.csv");
  auto r = run_cli({"solve", "--config", (dir / "c.json").string(), "--mask", (dir / "mask.csv").string(),
                    "--out", (dir / "o").string()});
  REQUIRE(r.code == cli::ok);
  CHECK(std::filesystem::exists(dir / "o" / "solve_temperature.pgm"));
  const auto j = nlohmann::json::parse(read_file(dir / "o" / "solve_report.json"));
  CHECK(j["fill_fraction"] == 1.0);

  // Mask on another grid.
  export_mask_csv(ChannelMask(Grid{5, 5, 0.001, 0.001}, true), dir / "wrong.csv");
  r = run_cli({"solve", "--config", (dir / "c.json").string(), "--mask", (dir / "wrong.csv").string(),
               "--out", (dir / "o").string()});
  CHECK(r.code == cli::config_error);
}

TEST_CASE("cli exit codes for solver and RD failures") {
  ScratchDir dir;
  write_file(dir / "slow.json", R"({"solver": {"max_iter": 2}})");
  auto r = run_cli({"baseline", "--config", (dir / "slow.json").string(), "--out", (dir / "s").string()});
  CHECK(r.code == cli::not_converged);
  CHECK(std::filesystem::exists(dir / "s" / "baseline_report.json"));
  CHECK(r.out.find("NOT converged") != std::string::npos);

  write_file(dir / "unstable.json", R"({"rd": {"dt": 1.0}, "loop": {"outer_rounds": 1}})");
  r = run_cli({"generate", "--config", (dir / "unstable.json").string(), "--out", (dir / "u").string()});
  CHECK(r.code == cli::rd_unstable);
  CHECK_FALSE(r.err.empty());
}
