#include <doctest.h>

#include <cmath>

#include "dweak/convergence.hpp"
#include "dweak/errors.hpp"

using namespace dweak;

namespace {

ExcessStats series(const TesterConfig& cfg, double (*e)(std::size_t)) {
  return excess_stats(Windows::from(cfg), [&](std::size_t n) { return e(n); });
}

}  // namespace

TEST_CASE("windows") {
  TesterConfig cfg;
  cfg.horizon = 1000;
  const auto w = Windows::from(cfg);
  CHECK(w.window.first == 100);
  CHECK(w.tail.first == 500);
  CHECK(w.early.first == 250);
  CHECK(w.early.last == 499);
  cfg.burn_in = 1000;
  CHECK_THROWS_AS(Windows::from(cfg), InvalidArgumentError);
}

TEST_CASE("excess classification") {
  TesterConfig cfg;
  cfg.horizon = 1000;
  CHECK(classify_excess(series(cfg, [](std::size_t) { return -1.0; }), cfg).trend == Trend::Settled);
  CHECK(classify_excess(series(cfg, [](std::size_t n) { return 1.0 / n; }), cfg).trend == Trend::Decaying);
  CHECK(classify_excess(series(cfg, [](std::size_t n) { return n % 3 == 0 ? 0.5 : 0.0; }), cfg).trend ==
        Trend::Persistent);
  const auto c = classify_excess(series(cfg, [](std::size_t n) { return 1.0 + 1.0 / n; }), cfg);
  CHECK(c.trend == Trend::Undetermined);
  // A hump that peaks inside the early window and then falls off like 1/n.
  CHECK(classify_excess(series(cfg, [](std::size_t n) { return 0.03 / n - 4.0 / (1.0 * n * n); }), cfg).trend ==
        Trend::Decaying);
}

TEST_CASE("constant sequences converge to their value only") {
  const Space s = Space::lp(2.0);
  const Point c = sparse({{1, 0.5}});
  const SequenceSpec seq(s, ExplicitList{{}, {c}});
  const auto fam = default_family(s);
  CHECK(test_dweak(seq, c, fam).outcome == Outcome::Consistent);
  CHECK(test_strong(seq, c).outcome == Outcome::Consistent);
  const auto v = test_dweak(seq, unit(2), fam);
  CHECK(v.outcome == Outcome::Violation);
  CHECK(v.gap > 0.0);
  CHECK(v.witness);
}

TEST_CASE("e_n in l_2 converges d-weakly to 0 but not strongly") {
  const Space s = Space::lp(2.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  CHECK(test_dweak(seq, SparseVector{}, default_family(s)).outcome == Outcome::Consistent);
  CHECK(test_strong(seq, SparseVector{}).outcome == Outcome::Violation);
}

TEST_CASE("e_n in l_1: Delta limit 0 is not a d-weak limit") {
  const Space s = Space::lp(1.0);
  const SequenceSpec seq(s, CoordinateBlowup{1.0, 0.0});
  const auto fam = default_family(s);
  CHECK(test_delta(seq, SparseVector{}, default_delta_probes(fam, {})).outcome == Outcome::Consistent);
  const auto v = test_dweak(seq, SparseVector{}, fam);
  REQUIRE(v.outcome == Outcome::Violation);
  REQUIRE(v.witness);
  CHECK(v.witness->as<L1Linear>());
  CHECK(v.gap == doctest::Approx(1.0));
}

TEST_CASE("discrete alternation has no d-weak limit") {
  const Space d = Space::discrete();
  const SequenceSpec seq(d, Alternating{atom(1), atom(2)});
  const auto fam = default_family(d);
  for (std::uint64_t k = 0; k < 5; ++k) CHECK(test_dweak(seq, atom(k), fam).outcome == Outcome::Violation);
}

TEST_CASE("known regions") {
  const auto r = known_region(SequenceSpec(Space::lp_ball(2.0, 1.0), CoordinateBlowup{0.5, 0.0}));
  REQUIRE(r);
  CHECK(r->kind == RegionKind::NormBall);
  CHECK(r->radius == doctest::Approx(std::sqrt(5.0) / 2.0 - 1.0).epsilon(1e-12));
  const auto l1 = known_region(SequenceSpec(Space::lp_ball(1.0, 1.0), CoordinateBlowup{0.5, 0.0}));
  REQUIRE(l1);
  CHECK(l1->radius == doctest::Approx(0.5));
}

TEST_CASE("lambda set on a small grid agrees with the closed form") {
  const Space b = Space::lp_ball(2.0, 1.0);
  const SequenceSpec seq(b, CoordinateBlowup{0.5, 0.0});
  const std::vector<Point> grid{SparseVector{}, unit(1, 0.1), unit(2, -0.11), unit(1, 0.13), unit(2, 0.3)};
  const auto est = lambda_set(seq, default_family(b), grid);
  CHECK(est.agrees());
  CHECK(est.member(0));
  CHECK(est.member(1));
  CHECK(est.member(2));
  CHECK_FALSE(est.member(3));
  CHECK_FALSE(est.member(4));
}

TEST_CASE("verdicts are identical across thread counts") {
  const Space b = Space::lp_ball(2.0, 1.0);
  const SequenceSpec seq(b, CoordinateBlowup{0.5, 0.0});
  TesterConfig one;
  one.threads = 1;
  const auto fam = default_family(b);
  const auto a = test_dweak(seq, unit(1, 0.2), fam, one);
  const auto c = test_dweak(seq, unit(1, 0.2), fam);
  CHECK(a.outcome == c.outcome);
  CHECK(a.gap == c.gap);
  CHECK(a.witness_index == c.witness_index);
}
