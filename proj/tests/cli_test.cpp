#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "test_util.hpp"

namespace fs = std::filesystem;
namespace testutil = topk::testutil;
using json = nlohmann::json;

namespace {

const fs::path kWork = fs::temp_directory_path() / "topk_cli_test";

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  fs::path out_file = kWork / "stdout.txt";
  std::string cmd = std::string(TOPK_CLI_PATH) + " " + args + " > " +
                    q(out_file) + " 2> " + q(kWork / "stderr.txt");
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = testutil::read_file(out_file.string());
  return r;
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
}

struct Fixture {
  fs::path circuit = kWork / "example1.nnf";
  fs::path weights = kWork / "example1.weights";
  Fixture() {
    fs::create_directories(kWork);
    write(circuit, testutil::read_file(testutil::data_path("example1.nnf")));
    write(weights, testutil::example1_weights_text());
  }
  std::string common() const {
    return "--circuit " + q(circuit) + " --weights " + q(weights);
  }
};

}  // namespace

TEST_CASE("preprocess writes a normalized circuit") {
  Fixture fx;
  fs::path out = kWork / "prepared.nnf";
  auto r = run("preprocess --circuit " + q(fx.circuit) + " --out " + q(out));
  CHECK(r.exit_code == 0);
  std::string text = testutil::read_file(out.string());
  CHECK(text.rfind("nnf ", 0) == 0);
  // Preprocessing is idempotent: a second pass reproduces the file.
  fs::path out2 = kWork / "prepared2.nnf";
  run("preprocess --circuit " + q(out) + " --out " + q(out2));
  CHECK(testutil::read_file(out2.string()) == text);
}

TEST_CASE("preprocess rejects malformed input with exit 2") {
  fs::create_directories(kWork);
  fs::path bad = kWork / "bad.nnf";
  write(bad, "nnf x y z\n");
  auto r = run("preprocess --circuit " + q(bad) + " --out " +
               q(kWork / "ignored.nnf"));
  CHECK(r.exit_code == 2);
  auto missing = run("preprocess --circuit " + q(kWork / "nope.nnf") +
                     " --out " + q(kWork / "ignored.nnf"));
  CHECK(missing.exit_code == 2);
}

TEST_CASE("preprocess keeps constant False") {
  fs::create_directories(kWork);
  fs::path f = kWork / "false.nnf";
  write(f, "nnf 1 0 3\nO 0 0\n");
  fs::path out = kWork / "false_out.nnf";
  auto r = run("preprocess --circuit " + q(f) + " --out " + q(out));
  CHECK(r.exit_code == 0);
  CHECK(testutil::read_file(out.string()).find("O 0 0") != std::string::npos);
}

TEST_CASE("solutions reports the worked example") {
  Fixture fx;
  auto r = run("solutions " + fx.common() + " --k 2 --verify");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["k"] == 2);
  CHECK(out["semigroup"] == "nat-plus");
  CHECK(out["count"] == 2);
  REQUIRE(out["solutions"].size() == 2);
  CHECK(out["solutions"][0]["value"] == "5");
  CHECK(out["solutions"][0]["literals"] ==
        json::array({1, 2, 3, -4}));
  CHECK(out["solutions"][1]["value"] == "3");

  auto text = run("solutions " + fx.common() + " --k 2 --format text");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("count 2") != std::string::npos);
  CHECK(text.out.find("5 : 1 2 3 -4") != std::string::npos);
}

TEST_CASE("solutions output is byte deterministic") {
  Fixture fx;
  auto a = run("solutions " + fx.common() + " --k 3");
  auto b = run("solutions " + fx.common() + " --k 3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("values reports the worked example") {
  Fixture fx;
  auto r = run("values " + fx.common() + " --k 10");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["values"] == json::array({"5", "3", "2"}));
}

TEST_CASE("k must be positive") {
  Fixture fx;
  CHECK(run("values " + fx.common() + " --k 0").exit_code == 2);
  CHECK(run("solutions " + fx.common() + " --k -3").exit_code == 2);
}

TEST_CASE("transform writes a verifiable circuit") {
  Fixture fx;
  fs::path out = kWork / "transformed.nnf";
  auto r = run("transform " + fx.common() + " --k 2 --out " + q(out));
  REQUIRE(r.exit_code == 0);
  json summary = json::parse(r.out);
  CHECK(summary["k"] == 2);
  CHECK(summary["values_kept"] == json::array({"5", "3"}));
  CHECK(summary["output_nodes"].get<int>() > 0);
  // The bundle check re-derives everything and must agree.
  auto chk = run("check " + fx.common() + " --k 2");
  CHECK(chk.exit_code == 0);
  json report = json::parse(chk.out);
  CHECK(report["pass"] == true);
  CHECK(report["checks"]["transform_models"] == true);
}

TEST_CASE("check verifies and rejects candidate solution files") {
  Fixture fx;
  fs::path cand = kWork / "cand.json";
  auto sols = run("solutions " + fx.common() + " --k 2");
  write(cand, sols.out);
  auto good = run("check " + fx.common() + " --k 2 --candidate " + q(cand));
  CHECK(good.exit_code == 0);
  CHECK(json::parse(good.out)["checks"]["candidate_solutions"] == true);

  // Corrupt one literal: still a model, but the profile is suboptimal.
  json corrupted = json::parse(sols.out);
  corrupted["solutions"][0]["literals"] = json::array({1, -2, -3, 4});
  write(cand, corrupted.dump());
  auto bad = run("check " + fx.common() + " --k 2 --candidate " + q(cand));
  CHECK(bad.exit_code == 1);
  CHECK(json::parse(bad.out)["pass"] == false);

  // Partial assignments are flagged as malformed.
  corrupted["solutions"][0]["literals"] = json::array({1, 2});
  write(cand, corrupted.dump());
  auto partial = run("check " + fx.common() + " --k 2 --candidate " + q(cand));
  CHECK(partial.exit_code == 1);
  CHECK(json::parse(partial.out)["checks"]["candidate_well_formed"] == false);
}

TEST_CASE("check campaign mode runs a small seeded campaign") {
  auto r = run("check --trials 10 --max-vars 7 --seed 3");
  REQUIRE(r.exit_code == 0);
  json out = json::parse(r.out);
  CHECK(out["mode"] == "campaign");
  CHECK(out["trials"] == 10);
  CHECK(out["pass"] == true);
}

TEST_CASE("unknown semigroup and subcommand fail with exit 2") {
  Fixture fx;
  CHECK(run("values " + fx.common() + " --k 1 --semigroup tropical").exit_code ==
        2);
  CHECK(run("frobnicate").exit_code == 2);
}
