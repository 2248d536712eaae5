// Copyright 2026 The stoqnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stoqnp/cli.h"
#include "stoqnp/serialize.h"
#include "support/generators.h"

using namespace stoqnp;
using namespace stoqnp::testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json doc() const { return Json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stoqnp");
  std::vector<char *> argv;
  for (auto &a : args) {
    argv.push_back(a.data());
  }
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string &name) { return fixture_path(name); }

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json without_wall_time(Json j) {
  j["manifest"].erase("wall_time_seconds");
  return j;
}

}  // namespace

TEST_CASE("manifest on every report") {
  auto r = cli({"oracle", fx("E3.json"), "--what", "energy", "--seed", "5"});
  REQUIRE(r.code == kExitAccept);
  auto j = r.doc();
  CHECK(j["manifest"]["command"] == "oracle");
  CHECK(j["manifest"]["seed"] == 5);
  CHECK(j["manifest"].contains("tolerances"));
  CHECK(j["manifest"].contains("version"));
  CHECK(j["manifest"].contains("wall_time_seconds"));
  CHECK(j["result"]["lambda_min"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("verify exit codes") {
  auto np = cli({"verify", fx("E5.json"), "--mode", "np", "--witness", "000", "--radius", "2"});
  CHECK(np.code == kExitReject);
  auto path = np.doc()["result"]["verdict"]["path"];
  REQUIRE(path.size() == 2);
  CHECK(path[1]["string"] == "101");

  CHECK(cli({"verify", fx("E1.json"), "--mode", "np", "--witness", "0000", "--radius", "10"}).code == kExitAccept);
  CHECK(cli({"verify", fx("E3.json"), "--mode", "commuting", "--witness", "00"}).code == kExitReject);
  CHECK(cli({"verify", fx("E1.json"), "--mode", "pinned", "--radius", "4"}).code == kExitAccept);
  CHECK(cli({"verify", fx("E2.json"), "--mode", "ma", "--witness", "00", "--steps", "20", "--trials", "10"}).code ==
        kExitAccept);
  CHECK(cli({"verify", fx("E6.json"), "--mode", "negligible", "--witness", "0000", "--radius", "1"}).code ==
        kExitAccept);
}

TEST_CASE("other commands") {
  CHECK(cli({"validate", fx("E1.json")}).code == kExitAccept);
  auto bfs = cli({"bfs", fx("E5.json"), "--start", "000", "--radius", "2"});
  CHECK(bfs.code == kExitReject);
  CHECK(bfs.doc()["result"]["found"] == true);
  CHECK(cli({"bfs", fx("E1.json"), "--start", "0000", "--radius", "3"}).code == kExitAccept);

  auto ex = cli({"expand", fx("E5.json"), "--start", "000", "--epsilon", "1/4"});
  REQUIRE(ex.code == kExitAccept);
  CHECK(ex.doc()["result"]["bad_string"] == "101");

  auto dec = cli({"decompose", fx("nonuniform.json")});
  REQUIRE(dec.code == kExitAccept);
  CHECK(dec.doc()["result"]["terms"][0]["uniform"] == false);

  auto ff = cli({"oracle", fx("E1.json"), "--what", "ff"});
  CHECK(ff.doc()["result"]["frustration_free"] == true);
  auto w = cli({"oracle", fx("E2.json"), "--what", "witness"});
  CHECK(w.doc()["result"]["witness"] == "00");

  auto c = cli({"compile", fx("circuits/not_output.json")});
  REQUIRE(c.code == kExitAccept);
  CHECK(c.doc()["result"]["validation"]["valid"] == true);
}

TEST_CASE("errors and usage") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"verify", fx("E1.json"), "--mode", "sideways"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitAccept);
  auto missing = cli({"validate", "/nonexistent/file.json"});
  CHECK(missing.code == kExitError);
  CHECK(!missing.err.empty());
  CHECK(cli({"walk", fx("nonuniform.json"), "--start", "0"}).code == kExitError);
  CHECK(cli({"verify", fx("E5.json"), "--mode", "commuting", "--witness", "000"}).code == kExitError);

  auto dir = std::filesystem::temp_directory_path() / "stoqnp_cli_test";
  std::filesystem::create_directories(dir);
  auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"num_dits":2,"alphabet_size":2,"locality":1,"degree":1,
    "terms":[{"qudits":[0,1],"classes":[["00"]]}]})";
  auto v = cli({"validate", bad.string()});
  CHECK(v.code == kExitReject);
  CHECK(!v.doc()["result"]["violations"].empty());
}

TEST_CASE("fixed manifest gives identical output") {
  std::vector<std::vector<std::string>> cmds{
      {"walk", fx("E5.json"), "--start", "000", "--steps", "50", "--trials", "100", "--seed", "9"},
      {"walk", fx("E5.json"), "--start", "000", "--steps", "50", "--trials", "100", "--seed", "9", "--threads", "3"},
      {"verify", fx("E5.json"), "--mode", "ma", "--witness", "000", "--steps", "50", "--trials", "50"},
      {"expand", fx("E1.json"), "--start", "0000", "--epsilon", "1", "--trace"},
      {"oracle", fx("E5.json"), "--what", "energy", "--method", "iterative"},
  };
  for (const auto &c : cmds) {
    auto a = cli(c);
    auto b = cli(c);
    CHECK(without_wall_time(a.doc()).dump() == without_wall_time(b.doc()).dump());
  }
  // thread count is in the manifest, not in the result
  CHECK(cli(cmds[0]).doc()["result"].dump() == cli(cmds[1]).doc()["result"].dump());
}

TEST_CASE("environment overrides") {
  setenv("STOQNP_SEED", "41", 1);
  auto r = cli({"walk", fx("E5.json"), "--start", "000", "--steps", "10", "--trials", "5"});
  unsetenv("STOQNP_SEED");
  CHECK(r.doc()["manifest"]["seed"] == 41);
}

TEST_CASE("convert round trip is byte stable") {
  auto dir = std::filesystem::temp_directory_path() / "stoqnp_cli_test";
  std::filesystem::create_directories(dir);
  auto a = dir / "a.json", b = dir / "b.json", m = dir / "m.json";
  REQUIRE(cli({"convert", fx("E1.json"), "--to", "setcsp", "-o", a.string()}).code == kExitAccept);
  REQUIRE(cli({"convert", a.string(), "--to", "hamiltonian", "-o", m.string()}).code == kExitAccept);
  REQUIRE(cli({"convert", m.string(), "--to", "setcsp", "-o", b.string()}).code == kExitAccept);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  // the bare document goes to stdout without -o
  auto out = cli({"convert", fx("E1.json"), "--to", "setcsp"});
  CHECK(Json::parse(out.out).dump(2) + "\n" == slurp(a));
  // the matrix fixture is what convert produces
  CHECK(Json::parse(slurp(m)) == read_json_file(fx("E1_matrix.json")));
}
