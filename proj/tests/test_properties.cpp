// Seeded property checks over random inputs.

#include <doctest.h>

#include <cmath>

#include "dweak/convergence.hpp"
#include "dweak/oracle.hpp"
#include "dweak/random.hpp"

using namespace dweak;

namespace {

SparseVector random_vector(Rng& rng, Index dims) {
  std::vector<SparseVector::Entry> e;
  for (Index k = 1; k <= dims; ++k) e.push_back({k, rng.uniform(-1.0, 1.0)});
  return SparseVector::from_entries(e);
}

}  // namespace

TEST_CASE("d(o, w) is the largest value at w over all internals") {
  Rng rng(31);
  for (int i = 0; i < 25; ++i) {
    const auto t = finite_compactification(random_finite_space(2 + rng.below(7), rng));
    CHECK(t.max_row_matches);
    CHECK(t.lipschitz_exact);
  }
}

TEST_CASE("Takahashi inequality for the affine W-map") {
  Rng rng(32);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const Space s = Space::lp(p);
    for (int i = 0; i < 50; ++i) {
      const Point x = random_vector(rng, 4), y = random_vector(rng, 4), z = random_vector(rng, 4);
      const double t = rng.uniform();
      const double lhs = distance(s, z, w_combine(s, x, y, t));
      CHECK(lhs <= (1 - t) * distance(s, z, x) + t * distance(s, z, y) + 1e-12);
    }
  }
}

TEST_CASE("internals are W-convex") {
  Rng rng(33);
  const Space s = Space::lp(2.0);
  for (int i = 0; i < 50; ++i) {
    const auto h = MetricFunctional::internal(s, random_vector(rng, 3));
    const Point x = random_vector(rng, 3), y = random_vector(rng, 3);
    const double t = rng.uniform();
    CHECK(eval(h, w_combine(s, x, y, t)) <= (1 - t) * eval(h, x) + t * eval(h, y) + 1e-12);
  }
}

TEST_CASE("Busemann functionals are subadditive and positively homogeneous") {
  Rng rng(34);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    for (int i = 0; i < 10; ++i) {
      SparseVector u = random_vector(rng, 3);
      u = (1.0 / lp_norm(u, p)) * u;
      const auto r = check_properties(MetricFunctional(Space::lp(p), BusemannClosedLp{p, u}), 30, i);
      CHECK(r.ok());
      REQUIRE(r.max_subadditivity_violation);
      CHECK(*r.max_subadditivity_violation <= 1e-9);
    }
  }
}

TEST_CASE("finite tester agrees with the exact oracle") {
  Rng rng(35);
  TesterConfig cfg;
  cfg.horizon = 400;
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 2 + rng.below(6);
    const Space s = random_finite_space(n, rng);
    ExplicitList g;
    for (std::uint64_t k = 1 + rng.below(3); k > 0; --k) g.period.push_back(atom(rng.below(n)));
    const SequenceSpec seq(s, g);
    const auto fam = default_family(s);
    for (std::uint64_t z = 0; z < n; ++z) {
      CHECK(test_dweak(seq, atom(z), fam, cfg).outcome == brute_force_dweak(s, seq, atom(z)).outcome);
    }
  }
}
