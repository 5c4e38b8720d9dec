#include <doctest.h>

#include <cmath>

#include "dweak/convergence.hpp"
#include "dweak/errors.hpp"

using namespace dweak;

TEST_CASE("gliding hump on a decaying l_1 sequence") {
  SeededRandomBounded g;
  g.seed = 3;
  g.shift = 3;
  g.decay = 0.5;
  g.decay_width = 3;
  const SequenceSpec seq(Space::lp(1.0), g);
  const auto r = gliding_hump(seq, 1.0);
  CHECK(r.certified);
  CHECK(r.certified_min >= 0.25);
  CHECK(r.indices.size() >= 3);
  for (std::size_t i = 1; i < r.indices.size(); ++i) CHECK(r.indices[i] > r.indices[i - 1]);
  CHECK_THROWS_AS(gliding_hump(SequenceSpec(Space::lp(2.0), g), 1.0), UnsupportedSpaceError);
}

TEST_CASE("uniform convexity branches") {
  const Space s = Space::lp(2.0);
  const Point xhat = unit(1);
  const SequenceSpec rotated(s, CoordinateBlowup{1.0, 0.0});
  CHECK(uniform_convex_strong_check(rotated, xhat).branch == UniformConvexBranch::InternalViolation);
  const SequenceSpec constant(s, ExplicitList{{}, {xhat}});
  CHECK(uniform_convex_strong_check(constant, xhat).branch == UniformConvexBranch::StrongConvergence);
  const SequenceSpec half(s, CoordinateBlowup{0.5, 0.0});
  CHECK(uniform_convex_strong_check(half, xhat).branch == UniformConvexBranch::PreconditionNotMet);
}

TEST_CASE("discrete classification cases") {
  const Space d = Space::discrete();
  const auto eventually = discrete_classify(SequenceSpec(d, ExplicitList{{atom(7)}, {atom(2)}}));
  CHECK(eventually.kind == DiscreteCase::EventuallyConstant);
  CHECK(eventually.lambda == "{atom(2)}");
  CHECK(discrete_classify(SequenceSpec(d, Alternating{atom(1), atom(2)})).lambda == "empty");
  CHECK(discrete_classify(SequenceSpec(d, DistinctAtoms{0})).lambda == "all points");
  const auto one = discrete_classify(interleave(SequenceSpec(d, ExplicitList{{}, {atom(4)}}),
                                                SequenceSpec(d, DistinctAtoms{10})));
  CHECK(one.kind == DiscreteCase::OneInfinitePoint);
  CHECK(one.disagreements == 0);
}

TEST_CASE("linear combination of limits") {
  const Space s = Space::lp(2.0);
  const SequenceSpec xs(s, CoordinateBlowup{1.0, 0.0});
  UserFormula f;
  f.terms.push_back({1.0, -1, false, Point{SparseVector::unit(1)}, 0});
  const SequenceSpec ys(s, f);
  const auto fam = default_family(s);
  CHECK(linear_combination_check(xs, SparseVector{}, ys, SparseVector{}, 2.0, -1.0, fam).outcome ==
        Outcome::Consistent);
  CHECK_THROWS_AS(linear_combination_check(xs, unit(1), ys, SparseVector{}, 1.0, 1.0, fam),
                  PreconditionFailedError);
}

TEST_CASE("closed balls hold their d-weak limits") {
  const Space s = Space::lp(2.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  const auto r = ball_closedness_probe(s, SparseVector{}, 1.0, seq, unit(1, 2.0), default_family(s));
  CHECK(r.verdict.outcome == Outcome::Violation);
  CHECK(r.analytic_gap == doctest::Approx(1.0));
}

TEST_CASE("liminf distance bound") {
  const Space s = Space::lp(2.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  const auto r = liminf_distance_bound(seq, SparseVector{}, {unit(1), unit(2, 3.0), sparse({{1, 1.0}, {3, 1.0}})},
                                       default_family(s));
  CHECK(r.precondition == Outcome::Consistent);
  CHECK(r.all_hold());
}

TEST_CASE("basepoint change keeps verdicts") {
  const Space s = Space::lp(1.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  const auto fam = default_family(s);
  const auto moved = rebase_family(fam, sparse({{2, 3.0}}));
  CHECK(test_dweak(seq, SparseVector{}, fam).outcome == test_dweak(seq, SparseVector{}, moved).outcome);
}
