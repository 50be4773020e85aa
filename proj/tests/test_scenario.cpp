#include "doctest.h"

#include <fstream>

#include "gmorita/scenario.hpp"

using namespace gmorita;

namespace {

std::string path(const std::string& name) { return std::string(GMORITA_SCENARIO_DIR) + "/" + name; }

Json running_json() {
  std::ifstream in(path("running_example.json"));
  return Json::parse(in);
}

const Json& result(const Json& report, const std::string& check) {
  for (const Json& r : report["results"])
    if (r["check"] == check)
      return r;
  FAIL("missing result for " << check);
  static Json none;
  return none;
}

} // namespace

TEST_CASE("the running example passes every check") {
  Scenario s = load_scenario_file(path("running_example.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{0, true});
  CHECK(code == 0);
  CHECK(report["results"].size() == 5);
  for (const Json& r : report["results"])
    CHECK_MESSAGE(r["status"] == "pass", r.dump());
  const Json& b = result(report, "butterfly");
  CHECK(b["targets"][0]["dim_Mhat"] == 2);
  CHECK(b["targets"][1]["dim_Mhat"] == 4);
  CHECK(result(report, "diagram")["residuals"] == Json::array({0, 0, 0}));
}

TEST_CASE("reports are deterministic and record the seed") {
  Scenario s = load_scenario_file(path("running_example.json"));
  auto a = verify_scenario(s, {"diagram"}, RunOptions{7, false});
  auto b = verify_scenario(s, {"diagram"}, RunOptions{7, false});
  CHECK(a.second.dump() == b.second.dump());
  CHECK(a.second["seed"] == 7);
}

TEST_CASE("a corrupted witness fails with the identity it breaks") {
  Scenario s = load_scenario_file(path("corrupted_witness.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{});
  CHECK(code == 1);
  bool named = false;
  for (const Json& c : report["results"][0]["checks"])
    if (!c["ok"].get<bool>() && c.contains("detail"))
      named = c["detail"].get<std::string>().find("twist") != std::string::npos;
  CHECK(named);
}

TEST_CASE("a twisted phi~ gives a nonzero residual") {
  Scenario s = load_scenario_file(path("twisted_diagram.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{});
  CHECK(code == 1);
  std::size_t total = 0;
  for (const Json& r : report["results"][0]["residuals"])
    total += r.get<std::size_t>();
  CHECK(total > 0);
}

TEST_CASE("a central element acting differently is named") {
  Scenario s = load_scenario_file(path("central_mismatch.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{});
  CHECK(code == 1);
  const Json& err = report["results"][0]["error"];
  CHECK(err["kind"] == "precondition");
  CHECK(err["message"].get<std::string>().find("(0 1)") != std::string::npos);
}

TEST_CASE("an empty pipeline is an empty report") {
  Scenario s = load_scenario_file(path("empty_pipeline.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{});
  CHECK(code == 0);
  CHECK(report["results"].empty());
}

TEST_CASE("transport to the dicyclic group") {
  Scenario s = load_scenario_file(path("dicyclic.json"));
  auto [code, report] = verify_scenario(s, {}, RunOptions{0, true});
  CHECK(code == 0);
  const Json& t = result(report, "butterfly")["targets"][0];
  CHECK(t["transversal_size"] == 2);
  CHECK(t["dim_Mhat"] == 8);
}

TEST_CASE("malformed scenarios are parse errors") {
  SUBCASE("unsupported version") {
    Json j = running_json();
    j["version"] = 2;
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("unknown key") {
    Json j = running_json();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("unresolved group") {
    Json j = running_json();
    j["setting"]["group"] = "H";
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("element outside the group") {
    Json j = running_json();
    j["twist"] = Json::array({5, 4, 3, 2, 1, 0});
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("block index out of range") {
    Json j = running_json();
    j["setting"]["b"] = 5;
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("N not normal") {
    Json j = running_json();
    j["setting"]["N"] = Json::array({Json::array({1, 0, 2, 3, 4, 5})});
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("unknown check in the pipeline") {
    Json j = running_json();
    j["pipeline"] = Json::array({"everything"});
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
  SUBCASE("ragged matrix") {
    Json j = running_json();
    j["M"]["left"][0]["matrix"] = Json::array({Json::array({0, 1}), Json::array({1})});
    CHECK_THROWS_AS(parse_scenario(j), ParseError);
  }
}

TEST_CASE("block reports") {
  FiniteGroup s3 = parse_group(Json::parse(R"({"degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]})"));
  Json r = blocks_report(s3, PrimeField(2), true);
  CHECK(r["blocks"].size() == 2);
  CHECK(r["blocks"][0]["dim"] == 2);
  CHECK(r["blocks"][1]["dim"] == 4);
  CHECK(r["oracle"] == true);
  CHECK(r["sum_is_one"] == true);
  for (const Json& b : r["blocks"]) {
    CHECK(b["residuals"]["idempotency"] == 0);
    CHECK(b["residuals"]["centrality"] == 0);
  }
  FiniteGroup c3 = parse_group(Json::parse(R"({"degree": 3, "generators": [[1, 2, 0]]})"));
  CHECK(blocks_report(c3, PrimeField(3), true)["blocks"].size() == 1);
  FiniteGroup c1 = parse_group(Json::parse(R"({"table": [[0]], "labels": ["e"]})"));
  CHECK(blocks_report(c1, PrimeField(5), false)["blocks"].size() == 1);
}
