#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dweak/errors.hpp"
#include "dweak/oracle.hpp"
#include "dweak/random.hpp"
#include "dweak/space.hpp"

using namespace dweak;

TEST_CASE("catalog spaces satisfy the metric axioms") {
  for (const Space& s : {Space::lp(1.0), Space::lp(2.0), Space::lp(3.0), Space::lp_ball(2.0, 1.0),
                         Space::lp_ball(1.0, 1.0), Space::snowflake(0.5), Space::discrete(),
                         Space::finite_discrete(4), Space::sup_norm()}) {
    CAPTURE(s.name());
    CHECK(validate_space(s, 7).ok());
  }
}

TEST_CASE("ball membership") {
  const Space b = Space::lp_ball(2.0, 1.0);
  CHECK(b.contains(unit(1)));
  CHECK_FALSE(b.contains(unit(1, 1.5)));
  CHECK_THROWS_AS(distance(b, unit(1, 2.0), unit(2)), MembershipError);
  CHECK_FALSE(Space::lp(2.0).contains(atom(1)));
}

TEST_CASE("snowflake distance") {
  const Space s = Space::snowflake(0.5);
  CHECK(distance(s, scalar(1.0), scalar(5.0)) == doctest::Approx(2.0));
}

TEST_CASE("discrete metric") {
  const Space d = Space::discrete();
  CHECK(distance(d, atom(3), atom(3)) == 0.0);
  CHECK(distance(d, atom(3), atom(4)) == 1.0);
}

TEST_CASE("validation reports a triangle violation as data") {
  CHECK(validate_space(Space::finite({{0, 1}, {1, 0}})).ok());
  const auto r = validate_space(Space::finite({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
  CHECK(r.violations.size() >= 1);
}

TEST_CASE("hull on a line metric") {
  const Space line = Space::finite({{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 1, 0, 1}, {3, 2, 1, 0}});
  CHECK(hull(line, {0, 3}) == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(hull(line, {1, 2}) == std::vector<std::uint64_t>{1, 2});
  // Every third point is metrically between two atoms of a discrete space.
  CHECK(hull(Space::finite_discrete(4), {0, 2}) == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(hull(Space::finite_discrete(5), {2}) == std::vector<std::uint64_t>{2});
}

TEST_CASE("hull contains its input and is idempotent") {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 3 + rng.below(5);
    const Space s = random_finite_space(n, rng);
    std::vector<std::uint64_t> a{rng.below(n)};
    if (rng.coin()) a.push_back((a[0] + 1) % n);
    std::sort(a.begin(), a.end());
    const auto h = hull(s, a);
    CHECK(std::includes(h.begin(), h.end(), a.begin(), a.end()));
    CHECK(hull(s, h) == h);
  }
}

TEST_CASE("W-map interpolates along segments") {
  const Space s = Space::lp(2.0);
  const Point x = unit(1), y = unit(2);
  const Point m = w_combine(s, x, y, 0.25);
  CHECK(distance(s, x, m) == doctest::Approx(0.25 * distance(s, x, y)));
  CHECK(distance(s, m, y) == doctest::Approx(0.75 * distance(s, x, y)));
}

TEST_CASE("random points are members") {
  Rng rng(3);
  for (const Space& s : {Space::lp_ball(2.0, 1.0), Space::sup_norm(), Space::finite_discrete(5)}) {
    for (int i = 0; i < 20; ++i) CHECK(s.contains(sample_point(s, rng)));
  }
}
