// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "scanforge/cli.hpp"

using namespace scanforge;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(SCANFORGE_DATA_DIR) + "/" + rel; }

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / "scanforge_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("compare reproduces the gain columns") {
  const Run r = run({"compare", "--stage", "post_layout"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["command"] == "compare");
  bool found = false;
  for (const auto& row : doc["rows"]) {
    if (row["variant"] == "APPROX" && row["mode"] == "functional") {
      found = true;
      CHECK(row["time_gain_ns"].get<double>() == doctest::Approx(0.02).epsilon(0.3));
      CHECK(std::abs(row["power_gain_pct"].get<double>() - 85.9) < 0.1);
    }
    if (row["variant"] == "MUX") CHECK(row["time_gain_ns"].is_null());
  }
  CHECK(found);
  CHECK(doc["literature"].size() == 6);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::string> args = {"sim", data("fixtures/chain10.snl"), "--cycles", "50", "--seed", "7"};
  CHECK(run(args).out == run(args).out);
  const auto other = run({"sim", data("fixtures/chain10.snl"), "--cycles", "50", "--seed", "8"});
  CHECK(other.out != run(args).out);
  CHECK(run({"compare"}).out == run({"compare"}).out);
}

TEST_CASE("scan-test on the ten-register fixture") {
  const auto resp = temp_dir() / "responses.txt";
  const Run r = run({"scan-test", data("fixtures/chain10.snl"), data("fixtures/chain10.pat"), "--variant", "approx",
                     "--responses", resp.string()});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["trace"]["cycles"] == 21 * 4);
  CHECK(doc["cycle_budget"] == 84);
  CHECK(doc["chain"]["variant"] == "APPROX");
  CHECK(doc["responses"].size() == 4);
  std::ifstream in(resp);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    CHECK(line == doc["responses"][lines].get<std::string>());
    ++lines;
  }
  CHECK(lines == 4);
}

TEST_CASE("insert writes a netlist that verifies") {
  const auto out = temp_dir() / "chain10_scan.snl";
  const Run r = run({"insert", data("fixtures/chain10.snl"), "--variant", "gdi", "-o", out.string()});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["chain"]["chain_length"] == 10);
  const Run again = run({"insert", out.string(), "--variant", "gdi"});
  CHECK(again.code == 1);
  CHECK(json::parse(again.err)["error"]["code"] == "scan.already_inserted");
}

TEST_CASE("switchsim reports transistor counts and equivalence") {
  const Run r = run({"switchsim", data("tnl/gdi_sff.tnl"), "--check-behavioral", "--random", "300"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["network"]["transistors"] == 12);
  CHECK(doc["equivalence"]["verdict"] == "equivalent");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"sta", "--variant", "lssd"}).code == 2);
  CHECK(run({"compare", "--format", "yaml"}).code == 2);
  const Run missing = run({"sim", "/nonexistent/file.snl"});
  CHECK(missing.code == 1);
  CHECK(json::parse(missing.err)["error"]["code"] == "io.error");
  const auto bad = temp_dir() / "bad.snl";
  std::ofstream(bad) << "module m\ninput a\noutput y\ngate g1 INV y a\ngate g2 INV y a\nendmodule\n";
  const Run dup = run({"sta", bad.string()});
  CHECK(dup.code == 1);
  CHECK(json::parse(dup.err)["error"]["code"] == "netlist.multiply_driven_net");
}

TEST_CASE("cell overrides from a flag or the environment") {
  const auto cfg = temp_dir() / "slow.cellcfg";
  std::ofstream(cfg) << "[ff.APPROX.post_layout.functional]\npower_uw = 3.62\n";
  auto approx_gain = [](const Run& r) {
    const json doc = json::parse(r.out);
    for (const auto& row : doc["rows"])
      if (row["variant"] == "APPROX" && row["mode"] == "functional") return row["power_gain_pct"].get<double>();
    return -1.0;
  };
  CHECK(approx_gain(run({"compare", "--cells", cfg.string()})) == doctest::Approx(0.0));
  ::setenv("SCANFORGE_CELLS", cfg.string().c_str(), 1);
  const double env_gain = approx_gain(run({"compare"}));
  ::unsetenv("SCANFORGE_CELLS");
  CHECK(env_gain == doctest::Approx(0.0));
  CHECK(approx_gain(run({"compare"})) == doctest::Approx(85.91).epsilon(0.001));
}

TEST_CASE("csv and text projections") {
  const Run csv = run({"compare", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("area,", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 7);
  const Run text = run({"sta", "--format", "text"});
  CHECK(text.out.find("timing.t_clk_min_ns: ") != std::string::npos);
}
