#include <doctest.h>

#include "dweak/errors.hpp"
#include "dweak/sequence.hpp"

using namespace dweak;

TEST_CASE("explicit lists are eventually periodic") {
  const SequenceSpec s(Space::discrete(), ExplicitList{{atom(9)}, {atom(1), atom(2)}});
  CHECK(s.at(1) == atom(9));
  CHECK(s.at(2) == atom(1));
  CHECK(s.at(5) == atom(2));
  const auto f = s.periodic_form();
  REQUIRE(f);
  CHECK(f->period.size() == 2);
}

TEST_CASE("coordinate blowup") {
  const SequenceSpec s(Space::lp(1.0), CoordinateBlowup{0.5, 0.0});
  CHECK(s.at(7) == unit(7, 0.5));
  const SequenceSpec g(Space::lp(2.0), CoordinateBlowup{0.0, 1.0});
  CHECK(g.at(3) == unit(3, 3.0));
  CHECK_FALSE(g.periodic_form());
}

TEST_CASE("seeded random terms are reproducible") {
  SeededRandomBounded gen;
  gen.seed = 11;
  const SequenceSpec a(Space::lp(1.0), gen), b(Space::lp(1.0), gen);
  CHECK(a.at(40) == b.at(40));
  gen.seed = 12;
  CHECK_FALSE(SequenceSpec(Space::lp(1.0), gen).at(40) == a.at(40));
}

TEST_CASE("formula terms") {
  UserFormula f;
  f.terms.push_back({1.0, 0, false, Point{SparseVector::unit(1)}, 0});
  f.terms.push_back({2.0, -1, true, std::nullopt, 0});
  const SequenceSpec s(Space::lp(2.0), f);
  CHECK(s.at(2) == sparse({{1, 1.0}, {2, 1.0}}));
  CHECK(s.at(1) == sparse({{1, -1.0}}));
}

TEST_CASE("interleave and combine") {
  const Space d = Space::discrete();
  const auto s = interleave(SequenceSpec(d, DistinctAtoms{0}), SequenceSpec(d, DistinctAtoms{100}));
  CHECK(s.at(1) == atom(1));
  CHECK(s.at(2) == atom(101));
  const Space l2 = Space::lp(2.0);
  const auto c = combine(2.0, SequenceSpec(l2, CoordinateBlowup{1.0, 0.0}), -1.0,
                         SequenceSpec(l2, ExplicitList{{}, {unit(1)}}));
  CHECK(c.at(3) == sparse({{1, -1.0}, {3, 2.0}}));
}

TEST_CASE("materialize checks membership") {
  const SequenceSpec s(Space::lp_ball(2.0, 1.0), CoordinateBlowup{0.0, 1.0});
  CHECK(s.materialize(1).size() == 1);
  CHECK_THROWS_AS(s.materialize(3), MembershipError);
}
