#include <doctest.h>

#include <cmath>

#include "dweak/point.hpp"

using namespace dweak;

TEST_CASE("sparse vectors drop zeros and sort entries") {
  const auto x = SparseVector::from_entries({{3, 1.0}, {1, 2.0}, {2, 0.0}});
  CHECK(x.support_size() == 2);
  CHECK(x.at(1) == 2.0);
  CHECK(x.at(2) == 0.0);
  CHECK(x.max_index() == 3);
  CHECK(x == SparseVector::from_entries({{1, 2.0}, {3, 1.0}}));
}

TEST_CASE("arithmetic cancels exactly") {
  const auto x = SparseVector::from_entries({{1, 0.5}, {4, -1.0}});
  CHECK((x - x).empty());
  CHECK((x + (-x)).empty());
  CHECK((2.0 * x).at(4) == -2.0);
  CHECK(linear_combination(2.0, x, -1.0, x) == x);
}

TEST_CASE("l_p norms and distances") {
  const auto x = SparseVector::from_entries({{1, 3.0}, {2, -4.0}});
  CHECK(lp_norm(x, 1.0) == doctest::Approx(7.0));
  CHECK(lp_norm(x, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(x, 3.0) == doctest::Approx(std::cbrt(91.0)));
  CHECK(lp_distance(x, SparseVector::unit(1, 3.0), 2.0) == doctest::Approx(4.0));
  CHECK(dot(x, SparseVector::unit(2)) == -4.0);
}

TEST_CASE("internal value matches the defining difference") {
  const auto x = SparseVector::from_entries({{1, 0.2}, {2, -0.7}});
  const auto w = SparseVector::from_entries({{2, 1.5}, {5, 0.3}});
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const double direct = lp_distance(x, w, p) - lp_norm(w, p);
    CHECK(lp_internal_value(x, w, p) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("piecewise-linear functions") {
  const auto f = PLFunction::make({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
  CHECK(f(0.25) == doctest::Approx(0.5));
  CHECK(sup_norm(f) == doctest::Approx(1.0));
  const auto g = PLFunction::constant(0.25);
  CHECK(sup_distance(f, g) == doctest::Approx(0.75));
  const auto h = linear_combination(1.0, f, -1.0, g);
  CHECK(h(0.5) == doctest::Approx(0.75));
  CHECK(h(0.0) == doctest::Approx(-0.25));
}

TEST_CASE("point rendering") {
  CHECK(to_string(atom(2)) == "atom(2)");
  CHECK(to_string(Point{SparseVector{}}) == "{}");
}
