#include <doctest.h>

#include <cmath>

#include "dweak/errors.hpp"
#include "dweak/functional.hpp"

using namespace dweak;

TEST_CASE("internals vanish at the basepoint and are 1-Lipschitz") {
  const Space s = Space::lp(2.0);
  const auto h = MetricFunctional::internal(s, sparse({{1, 1.0}, {3, -2.0}}));
  CHECK(eval(h, s.basepoint()) == 0.0);
  CHECK(check_properties(h, 100, 1).ok());
}

TEST_CASE("internal at w is minimized exactly at w") {
  const Space s = Space::lp(1.0);
  const Point w = sparse({{2, 0.5}});
  const auto h = MetricFunctional::internal(s, w);
  CHECK(eval(h, w) == doctest::Approx(-0.5));
  CHECK(eval(h, unit(2)) > eval(h, w));
}

TEST_CASE("Busemann norm identity in l_2") {
  const Space s = Space::lp(2.0);
  const SparseVector v = SparseVector::from_entries({{1, 3.0}, {2, 4.0}});
  const SparseVector u = (1.0 / 5.0) * v;
  CHECK(busemann_closed_lp(2.0, -u, v) == doctest::Approx(5.0));
  CHECK(busemann_closed_lp(2.0, u, v) == doctest::Approx(-5.0));
  const auto num = busemann_numeric(s, -u, v);
  CHECK(num.converged);
  CHECK(num.value == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("Busemann in l_1 uses the sign pattern of u") {
  const SparseVector u = SparseVector::from_entries({{1, 0.5}, {2, -0.5}});
  const SparseVector x = SparseVector::from_entries({{1, 1.0}, {2, 1.0}, {3, 2.0}});
  // -(x1 - x2) + |x3|
  CHECK(busemann_closed_lp(1.0, u, x) == doctest::Approx(2.0));
}

TEST_CASE("Busemann preconditions") {
  CHECK_THROWS_AS(busemann_closed_lp(2.0, SparseVector::unit(1, 2.0), SparseVector{}), NotUnitVectorError);
  CHECK_THROWS_AS(busemann_numeric(Space::discrete(), atom(1), atom(2)), NotNormedSpaceError);
}

TEST_CASE("sign functional on l_1 with a tail") {
  const Space s = Space::lp(1.0);
  const MetricFunctional h(s, L1Linear{{{1, 1}}, L1Linear::Tail{3, -1}});
  CHECK(eval(h, sparse({{1, 2.0}, {2, 5.0}, {7, 1.0}})) == doctest::Approx(1.0));
  CHECK(eval(h, unit(1000)) == -1.0);
}

TEST_CASE("Hilbert-ball functional at the center") {
  const Space b = Space::lp_ball(2.0, 1.0);
  const MetricFunctional h(b, HilbertBall{SparseVector{}, 1.0});
  CHECK(eval(h, unit(4, 0.5)) == doctest::Approx(std::sqrt(1.25) - 1.0));
  CHECK(check_properties(h, 80, 2).ok());
}

TEST_CASE("rebasing shifts by a constant") {
  const Space s = Space::lp(2.0);
  const auto h = MetricFunctional::internal(s, unit(1));
  const Point b = unit(2, 3.0);
  const auto r = rebase(h, b);
  CHECK(eval(r, b) == 0.0);
  const Point x = sparse({{1, 0.3}, {2, 0.1}});
  CHECK(eval(r, x) == doctest::Approx(eval(h, x) - eval(h, b)));
  CHECK(rebase(r, x).as<Rebased>()->b == x);
}

TEST_CASE("shift-scale identity") {
  const Space s = Space::lp(3.0);
  const auto h = MetricFunctional::internal(s, sparse({{1, 1.0}, {2, 2.0}}));
  const Point v = sparse({{2, -1.0}, {3, 0.5}});
  const Point x = sparse({{1, 0.2}, {4, 1.0}});
  for (double sc : {-2.0, 0.5, 3.0}) {
    const auto ss = shift_scale(h, sc, 1.5, v);
    const double lhs = eval(h, linear_combination(s, sc, x, 1.5, v));
    CHECK(lhs == doctest::Approx(std::abs(sc) * eval(ss.eta, x) + ss.offset).epsilon(1e-12));
    CHECK(eval(ss.view, x) == doctest::Approx(eval(ss.eta, x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(shift_scale(h, 0.0, 1.0, v), ZeroScaleError);
}

TEST_CASE("separation theorem") {
  const Space s = Space::lp(1.5);
  const Point x = sparse({{1, 1.0}}), y = sparse({{2, 2.0}});
  const auto sep = separating_busemann(s, x, y);
  CHECK(sep.gap == doctest::Approx(distance(s, x, y)).epsilon(1e-9));
  CHECK_THROWS_AS(separating_busemann(s, x, x), EqualPointsError);
}

TEST_CASE("norm as a supremum of Busemann values") {
  const Space s = Space::lp(2.0);
  const Point v = sparse({{1, 1.0}, {2, 1.0}});
  const auto r = norm_via_busemann(s, v, 32, 4);
  CHECK(r.sup_value == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.max_sampled <= r.sup_value + 1e-12);
}

TEST_CASE("default families") {
  CHECK(default_family(Space::lp_ball(2.0, 1.0)).members.size() >= 200);
  for (const auto& h : default_family(Space::lp_ball(1.0, 1.0)).members) CHECK(h.as<Internal>());
  const auto fam = default_family(Space::finite_discrete(4));
  CHECK(fam.members.size() == 4);
  const auto rebased = rebase_family(fam, atom(2));
  for (const auto& h : rebased.members) CHECK(eval(h, atom(2)) == 0.0);
}
