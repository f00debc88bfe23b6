#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "branecalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = branecalc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Run r = run(args);
  REQUIRE(r.code == 0);
  return nlohmann::json::parse(r.out);
}

std::string fan(const std::string& name) { return std::string(BRANECALC_DATA_DIR) + "/fans/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

bool single_line(const std::string& s) { return !s.empty() && s.find('\n') == s.size() - 1; }

}  // namespace

TEST_CASE("cli roots") {
  CHECK(run_json({"roots", "--type", "A", "--rank", "2"})["result"]["positive_root_count"] == 3);
  CHECK(run_json({"roots", "--type", "G2", "--rank", "2"})["result"]["positive_root_count"] == 6);
  CHECK(run_json({"roots", "--type", "E8"})["result"]["positive_root_count"] == 120);
  const auto bad = run({"roots", "--type", "A", "--rank", "0"});
  CHECK(bad.code == 2);
  CHECK(single_line(bad.err));
  CHECK(run({"roots", "--type", "G", "--rank", "3"}).code == 2);
  CHECK(run({"roots", "--type", "G3", "--rank", "2"}).code == 2);
  CHECK(run({"roots", "--rank", "2"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("cli strings") {
  const auto r = run_json({"strings", "--type", "A", "--rank", "1", "--mu", "3", "--lambda", "0"})["result"];
  CHECK(r["ghost_number"] == 1);
  CHECK(r["dimension"] == 2);
  const auto same = run_json({"strings", "--type", "A2", "--mu", "2,-1", "--lambda", "2,-1"})["result"];
  CHECK(same["ghost_number"] == 0);
  CHECK(same["dimension"] == 1);
  const auto vanish = run({"strings", "--type", "A", "--rank", "1", "--mu", "0", "--lambda", "-1"});
  CHECK(vanish.code == 0);
  CHECK(vanish.out.find("vanish") != std::string::npos);
  CHECK(run({"strings", "--type", "A", "--rank", "1", "--mu", "x", "--lambda", "0"}).code == 2);
  CHECK(run({"strings", "--type", "A", "--rank", "2", "--mu", "1", "--lambda", "0,0"}).code == 2);
  // Not a character of Q.
  const auto dom = run({"strings", "--type", "A", "--rank", "2", "--levi", "1", "--mu", "1,0", "--lambda", "0,0"});
  CHECK(dom.code == 2);
  CHECK(dom.err.find("not_q_character") != std::string::npos);
  CHECK(run({"strings", "--type", "A", "--rank", "2", "--levi", "3", "--mu", "0,0", "--lambda", "0,0"}).code == 2);
}

TEST_CASE("cli ext-bundles") {
  CHECK(run_json({"ext-bundles", "--type", "A2", "--alpha", "0,0", "--beta", "0,0", "--k", "0"})["result"]["dimension"] == 1);
  CHECK(run_json({"ext-bundles", "--type", "A1", "--alpha", "3", "--beta", "0", "--k", "1"})["result"]["dimension"] == 2);
  const auto r = run_json({"ext-bundles", "--type", "A2", "--levi", "1", "--alpha", "0,0", "--beta", "1,0", "--k", "0"});
  CHECK(r["result"]["dimension"] == 3);
  CHECK(r["inputs"]["levi"] == nlohmann::json::array({1}));
  CHECK(r["result"]["dimensions_by_degree"].size() == 4);
}

TEST_CASE("cli tensor") {
  const auto r = run_json({"tensor", "--type", "A", "--rank", "1", "--alpha", "1", "--beta", "1"})["result"];
  CHECK(r["total_dimension"] == 4);
  CHECK(r["summands"].size() == 2);
  const auto unit = run_json({"tensor", "--type", "A2", "--alpha", "0,0", "--beta", "2,1"})["result"];
  CHECK(unit["summands"].size() == 1);
  const auto pair = run_json({"tensor", "--type", "A2", "--alpha", "1,0", "--beta", "0,1"})["result"];
  CHECK(pair["summands"][0]["dimension"] == 8);
  CHECK(pair["summands"][1]["dimension"] == 1);
  CHECK(run({"tensor", "--type", "A2", "--alpha", "-1,0", "--beta", "0,1"}).code == 2);
}

TEST_CASE("cli toric-index") {
  const auto p1 = run_json({"toric-index", fan("p1.json"), "--check-lattice"})["result"];
  CHECK(p1["index"] == 3);
  CHECK(p1["lattice"]["count"] == 3);
  CHECK(p1["lattice"]["status"] == "AGREE");
  CHECK(run_json({"toric-index", fan("p2.json"), "--divisor", "0,0,0"})["result"]["index"] == 1);
  CHECK(run_json({"toric-index", fan("p1_rank2.json")})["result"]["index"] == 3);
  CHECK(run_json({"toric-index", fan("p1.json"), "--divisor", "-1,0"})["result"]["index"] == 0);
  const auto skipped = run_json({"toric-index", fan("p1.json"), "--divisor", "-3,0", "--check-lattice"})["result"];
  CHECK(skipped["index"] == -2);
  CHECK(skipped["lattice"]["status"] == "SKIPPED");

  const auto bad = run({"toric-index", fan("not_smooth.json")});
  CHECK(bad.code == 2);
  CHECK(single_line(bad.err));
  CHECK(bad.err.find("not_smooth") != std::string::npos);
  CHECK(bad.err.find("determinant 2") != std::string::npos);
  CHECK(run({"toric-index", fan("p2.json"), "--divisor", "1,0"}).code == 2);
  CHECK(run({"toric-index", fan("p1.json"), "--direction", "0"}).code == 2);
  CHECK(run({"toric-index", "/nonexistent/fan.json"}).code == 2);
  CHECK(run({"toric-index", temp_file("bc_syntax.json", "{\"dim\": 1,")}).code == 2);
  CHECK(run({"toric-index", temp_file("bc_nobundle.json", R"({"dim": 1, "rays": [[1],[-1]], "max_cones": [[0],[1]]})")})
            .code == 2);
  // Fixed-point data that do not glue: the pole survives, a consistency failure.
  const auto pole = run({"toric-index", temp_file("bc_pole.json", R"({"dim": 2, "rays": [[1,0],[0,1],[-1,-1]],
      "max_cones": [[0,1],[1,2],[0,2]], "bundle_fixed_weights": [[[0,0]], [[0,0]], [[5,0]]]})")});
  CHECK(pole.code == 3);
  CHECK(pole.err.find("pole_at_one") != std::string::npos);
  // Incomplete fan: parses, but localization refuses it.
  const auto affine = run({"toric-index", temp_file("bc_affine.json", R"({"dim": 2, "rays": [[1,0],[0,1]],
      "max_cones": [[0,1]], "divisor": [0,0]})")});
  CHECK(affine.code == 2);
  CHECK(affine.err.find("incomplete_fan") != std::string::npos);
}

TEST_CASE("cli toric-points") {
  const auto r = run_json({"toric-points", fan("p2.json")})["result"];
  CHECK(r["complete"] == true);
  CHECK(r["fixed_points"].size() == 3);
  CHECK(r["fixed_points"][1]["isotropy_weights"] == nlohmann::json::parse("[[-1,1],[-1,0]]"));
  CHECK(r["nef"] == true);
}

TEST_CASE("cli json output is byte-identical across runs and thread counts") {
  const std::vector<std::vector<std::string>> commands{
      {"--format", "json", "roots", "--type", "F4"},
      {"--format", "json", "tensor", "--type", "G2", "--alpha", "1,1", "--beta", "0,2"},
      {"--format", "json", "toric-index", fan("p3.json"), "--check-lattice"},
      {"--format", "json", "toric-index", fan("f2.json"), "--divisor", "1,2,0,3"},
  };
  for (const auto& c : commands) {
    const Run a = run(c);
    const Run b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto threaded = c;
    threaded.insert(threaded.begin(), {"--jobs", "3"});
    CHECK(run(threaded).out == a.out);
  }
  const auto doc = nlohmann::json::parse(run(commands[0]).out);
  for (const char* key : {"command", "inputs", "result", "timings_ms"}) CHECK(doc.contains(key));
  CHECK(doc["inputs"]["sha256"].get<std::string>().size() == 64);
  CHECK(doc["timings_ms"].empty());
  const auto timed = run_json({"--timings", "toric-index", fan("p2.json")});
  CHECK_FALSE(timed["timings_ms"].empty());
}

TEST_CASE("cli help") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("toric-index") != std::string::npos);
}
