#include <doctest.h>

#include <set>
#include <string>

#include "dweak/errors.hpp"
#include "dweak/scenario.hpp"

using namespace dweak;

namespace {

const char* kSmall = R"({
  "name": "small",
  "topic": "unit vectors in l_2",
  "space": {"kind": "lp", "p": 2},
  "sequence": {"kind": "blowup", "scale": 1, "growth": 0},
  "horizon": 400,
  "seed": 3,
  "checks": [
    {"id": "zero", "op": "dweak", "params": {"candidate": {"sparse": []}}, "expect": {"outcome": "consistent"}},
    {"id": "far", "op": "dweak", "params": {"candidate": {"sparse": [[1, 1]]}}, "expect": {"outcome": "violation"}},
    {"id": "strong", "op": "strong", "params": {"candidate": {"sparse": []}}, "expect": {"outcome": "violation"}}
  ]
})";

}  // namespace

TEST_CASE("empty check list gives an empty passing report") {
  const auto sc = parse_scenario(R"({"name": "empty", "checks": []})");
  const auto r = run_scenario(sc);
  CHECK(r.checks.empty());
  CHECK(r.pass());
  CHECK(r.to_json()["summary"]["total"] == 0);
}

TEST_CASE("scenario serialization is a fixed point") {
  const auto once = to_json(parse_scenario(kSmall));
  CHECK(to_json(parse_scenario(once.dump())) == once);
  for (const auto& e : embedded_scenarios()) {
    CAPTURE(e.name);
    const auto j = to_json(parse_scenario(e.text, e.name));
    CHECK(to_json(parse_scenario(j.dump(), e.name)) == j);
  }
}

TEST_CASE("unknown fields and bad checks are rejected") {
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "colour": 1, "checks": []})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "checks": [{"id": "a", "op": "nope"}]})"), ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "space": {"kind": "lp", "p": 2},
      "checks": [{"id": "a", "op": "validate_space"}, {"id": "a", "op": "validate_space"}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "checks": [{"id": "a", "op": "strong",
      "params": {"candidate": {"sparse": []}}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_scenario(R"({"name": "x", "horizon": 10, "burn_in": 10, "checks": []})"), ParseError);
}

TEST_CASE("running a scenario") {
  const auto r = run_scenario(parse_scenario(kSmall));
  REQUIRE(r.checks.size() == 3);
  CHECK(r.pass());
  CHECK(r.checks[0].id == "zero");
  CHECK(r.checks[1].result["outcome"] == "violation");
  CHECK(r.to_json()["summary"]["topics"]["unit vectors in l_2"] == "pass");
}

TEST_CASE("failed expectations and errors are reported, not thrown") {
  auto sc = parse_scenario(kSmall);
  sc.checks[0].expect["outcome"] = "violation";
  const auto r = run_scenario(sc);
  CHECK_FALSE(r.pass());
  CHECK(r.checks[0].status == CheckStatus::Fail);
  CHECK(r.checks[1].status == CheckStatus::Pass);
}

TEST_CASE("overrides") {
  const auto sc = parse_scenario(kSmall);
  Overrides o;
  o.filter = "far";
  const auto only = run_scenario(sc, o);
  REQUIRE(only.checks.size() == 1);
  CHECK(only.checks[0].id == "far");
  o.filter = "small/strong";
  CHECK(run_scenario(sc, o).checks.size() == 1);
  o.filter = "missing";
  CHECK(run_scenario(sc, o).checks.empty());

  Overrides seeded;
  seeded.seed = 99;
  const auto a = run_scenario(sc).to_json();
  const auto b = run_scenario(sc, seeded).to_json();
  for (std::size_t i = 0; i < 3; ++i) CHECK(a["checks"][i]["result"]["outcome"] == b["checks"][i]["result"]["outcome"]);
}

TEST_CASE("reports are deterministic") {
  const auto sc = parse_scenario(kSmall);
  Overrides one;
  one.threads = 1;
  CHECK(run_scenario(sc).to_json().dump() == run_scenario(sc, one).to_json().dump());
}

TEST_CASE("bundled scenarios have unique ids and a topic") {
  std::set<std::string> names;
  for (const auto& e : embedded_scenarios()) {
    const auto sc = parse_scenario(e.text, e.name);
    CHECK(names.insert(sc.name).second);
    CHECK_FALSE(sc.topic.empty());
    std::set<std::string> ids;
    for (const auto& c : sc.checks) CHECK(ids.insert(c.id).second);
  }
  CHECK(names.size() == embedded_scenarios().size());
}

TEST_CASE("every op is listed with its keys") {
  std::set<std::string> ops;
  for (const auto& op : list_checks()) {
    CHECK(ops.insert(op.name).second);
    CHECK_FALSE(op.summary.empty());
  }
  CHECK(ops.count("dweak"));
  CHECK(ops.count("lambda_set"));
}

TEST_CASE("certificates replay") {
  const auto sc = parse_scenario(kSmall);
  const auto r = run_scenario(sc);
  const double gap = replay_certificate(*sc.space, *sc.sequence, r.checks[1].result, sc.config);
  CHECK(gap == doctest::Approx(r.checks[1].result["gap"].get<double>()).epsilon(1e-12));
}
