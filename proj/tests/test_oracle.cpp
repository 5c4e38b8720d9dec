#include <doctest.h>

#include <cmath>

#include "dweak/errors.hpp"
#include "dweak/oracle.hpp"
#include "dweak/random.hpp"

using namespace dweak;

namespace {

const Space& line5() {
  static const Space s = Space::finite({{0, 1, 2, 3, 4},
                                        {1, 0, 1, 2, 3},
                                        {2, 1, 0, 1, 2},
                                        {3, 2, 1, 0, 1},
                                        {4, 3, 2, 1, 0}});
  return s;
}

}  // namespace

TEST_CASE("compactification table of a line") {
  const auto t = finite_compactification(line5());
  CHECK(t.rows.size() == 5);
  CHECK(t.rows_distinct);
  CHECK(t.lipschitz_exact);
  CHECK(t.vanish_at_basepoint);
  CHECK(t.max_row_matches);
  CHECK(t.rows[4][2] == -2.0);  // d(2, 4) - d(0, 4)
  CHECK(t.column_max[3] == 3.0);
  CHECK_THROWS_AS(finite_compactification(Space::lp(2.0)), UnsupportedSpaceError);
}

TEST_CASE("exact verdicts for periodic sequences") {
  const SequenceSpec seq(line5(), ExplicitList{{atom(4)}, {atom(1), atom(3)}});
  CHECK(brute_force_dweak(line5(), seq, atom(1)).outcome == Outcome::Violation);
  CHECK(brute_force_dweak(line5(), seq, atom(2)).outcome == Outcome::Violation);
  const SequenceSpec constant(line5(), ExplicitList{{atom(0)}, {atom(3)}});
  CHECK(brute_force_dweak(line5(), constant, atom(3)).outcome == Outcome::Consistent);
  CHECK(brute_force_dweak(line5(), constant, atom(2)).outcome == Outcome::Violation);
  CHECK_THROWS_AS(brute_force_dweak(Space::discrete(), SequenceSpec(Space::discrete(), DistinctAtoms{0}), atom(1)),
                  UnsupportedSpaceError);
}

TEST_CASE("random finite spaces are integer metrics") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const Space s = random_finite_space(2 + rng.below(7), rng);
    CHECK(validate_space(s).ok());
  }
}

TEST_CASE("index schedules") {
  CHECK(IndexSchedule{}.indices().size() == 61);
  CHECK(IndexSchedule{}.indices()[3] == 8);
  CHECK(IndexSchedule{IndexSchedule::Kind::Linear, 4}.indices() == std::vector<std::uint64_t>{1, 2, 3, 4});
}

TEST_CASE("diagonal extraction in l_1 recovers the norm") {
  const SequenceSpec w(Space::lp(1.0), CoordinateBlowup{0.0, 1.0});
  const std::vector<Point> grid{sparse({{1, 1.0}, {2, -2.0}}), unit(3, 0.5)};
  const auto r = diagonal_subsequence(w, grid, 1e-7);
  CHECK(r.limits[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(r.limits[1] == doctest::Approx(0.5).epsilon(1e-6));
  for (std::size_t i = 1; i < r.indices.size(); ++i) CHECK(r.indices[i] > r.indices[i - 1]);
}

TEST_CASE("snowflake escapes give the zero functional") {
  UserFormula f;
  f.terms.push_back({1.0, 2, false, Point{Scalar{1.0}}, 0});
  const auto r = snowflake_limit_check(SequenceSpec(Space::snowflake(0.5), f), {scalar(3.0), scalar(-7.0)}, 1e-7);
  CHECK(r.escapes);
  CHECK(r.zero_residual <= 1e-6);
}

TEST_CASE("Busemann cross-validation") {
  for (double p : {1.0, 2.0, 3.0}) CHECK(busemann_cross_validate(p, 20, 2).max_residual <= 1e-6);
}
