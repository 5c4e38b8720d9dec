#include <doctest.h>

#include <cmath>

#include "dweak/convergence.hpp"
#include "dweak/errors.hpp"
#include "dweak/serialize.hpp"

using namespace dweak;

TEST_CASE("points round-trip") {
  for (const Point& p : {sparse({{1, 0.5}, {7, -2.0}}), atom(4), scalar(-1.25),
                         Point{PLFunction::make({0.0, 0.3, 1.0}, {1.0, -1.0, 0.5})}}) {
    CHECK(point_from_json(to_json(p)) == p);
  }
}

TEST_CASE("spaces round-trip") {
  for (const Space& s : {Space::lp(1.5), Space::lp_ball(2.0, 1.0), Space::snowflake(0.5),
                         Space::discrete(), Space::finite({{0, 2}, {2, 0}}), Space::sup_norm()}) {
    CHECK(to_json(space_from_json(to_json(s))) == to_json(s));
  }
}

TEST_CASE("functionals round-trip and evaluate identically") {
  const Space s = Space::lp(1.0);
  const Point x = sparse({{1, 0.4}, {3, -1.0}, {9, 2.0}});
  for (const auto& h : default_family(s).members) {
    const auto back = functional_from_json(s, to_json(h));
    CHECK(back(x) == h(x));
  }
  const MetricFunctional tail(s, L1Linear{{{2, -1}}, L1Linear::Tail{5, 1}});
  CHECK(functional_from_json(s, to_json(tail))(x) == tail(x));
}

TEST_CASE("sequences round-trip") {
  const Space s = Space::lp(2.0);
  UserFormula f;
  f.terms.push_back({1.0, -1, true, Point{SparseVector::unit(2)}, 0});
  f.terms.push_back({0.5, 0, false, std::nullopt, 3});
  for (const SequenceSpec& q : {SequenceSpec(s, f), SequenceSpec(s, CoordinateBlowup{0.5, 1.0}),
                                combine(1.0, SequenceSpec(s, f), 2.0, SequenceSpec(s, CoordinateBlowup{}))}) {
    const auto back = sequence_from_json(s, to_json(q));
    CHECK(to_json(back) == to_json(q));
    CHECK(back.at(17) == q.at(17));
  }
}

TEST_CASE("unknown keys are rejected with a pointer") {
  try {
    space_from_json(Json::parse(R"({"kind":"lp","p":2,"radius":1})"), "/space");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.path() == "/space/radius");
  }
  CHECK_THROWS_AS(point_from_json(Json::parse(R"({"atom":1,"scalar":2})")), ParseError);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"kind":"hyperbolic"})")), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_json_text("{\n  \"a\": [1, 2,\n}");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
}

TEST_CASE("verdict JSON is stable") {
  const Space s = Space::lp(1.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  const auto v = test_dweak(seq, SparseVector{}, default_family(s));
  const Json j = to_json(v);
  CHECK(j["outcome"] == "violation");
  CHECK(j.contains("witness"));
  CHECK(to_json(test_dweak(seq, SparseVector{}, default_family(s))).dump() == j.dump());
}
