#include <algorithm>
#include <cmath>
#include <numbers>

#include "dweak/functional.hpp"

namespace dweak {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Builder {
 public:
  Builder(const Space& space, std::size_t cap) : space_(space), cap_(cap) {}

  bool full() const { return members_.size() >= cap_; }

  void add(FunctionalKind kind) {
    if (!full()) members_.emplace_back(space_, std::move(kind));
  }

  void internal(const Point& w) {
    if (!space_.contains(w)) return;
    if (std::find(anchors_.begin(), anchors_.end(), w) != anchors_.end()) return;
    anchors_.push_back(w);
    add(Internal{w});
  }

  std::vector<MetricFunctional> take() { return std::move(members_); }

 private:
  const Space& space_;
  std::size_t cap_;
  std::vector<MetricFunctional> members_;
  std::vector<Point> anchors_;
};

SparseVector seeded_vector(Rng& rng, Index dims, double scale) {
  std::vector<SparseVector::Entry> e;
  for (Index k = 1; k <= dims; ++k) {
    if (rng.coin()) e.push_back({k, rng.uniform(-scale, scale)});
  }
  return SparseVector::from_entries(std::move(e));
}

void coordinate_internals(Builder& b, Index dims, std::initializer_list<double> scales) {
  b.internal(SparseVector{});
  for (double s : scales) {
    for (Index k = 1; k <= dims; ++k) {
      b.internal(SparseVector::unit(k, s));
      b.internal(SparseVector::unit(k, -s));
    }
  }
}

void seeded_internals(Builder& b, const FamilyBudget& budget, double scale, double ball_p = 0,
                      double radius = 0) {
  Rng rng(mix_seed(budget.seed, 0x1f));
  for (std::size_t i = 0; i < budget.random_internals; ++i) {
    SparseVector v = seeded_vector(rng, budget.indices, scale);
    if (ball_p > 0) {
      const double n = lp_norm(v, ball_p);
      if (n > radius) v = (radius * rng.uniform() / n) * v;
    }
    b.internal(v);
  }
}

// Index sets of {1..dims} by size, then lexicographically; every sign pattern.
void l1_linear_finite(Builder& b, Index dims) {
  for (Index size = 1; size <= dims && !b.full(); ++size) {
    std::vector<bool> pick(static_cast<std::size_t>(dims), false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<Index> idx;
      for (Index k = 0; k < dims; ++k) {
        if (pick[static_cast<std::size_t>(k)]) idx.push_back(k + 1);
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
        L1Linear l;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          l.signs.push_back({idx[j], ((mask >> (idx.size() - 1 - j)) & 1) ? 1 : -1});
        }
        b.add(std::move(l));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()) && !b.full());
  }
}

}  // namespace

FunctionalFamily default_family(const Space& space, const FamilyBudget& budget) {
  Builder b(space, budget.max_members);
  const Index dims = budget.indices;
  std::string note;

  std::visit(
      overloaded{
          [&](const LpSpace& s) {
            coordinate_internals(b, dims, {1.0, 2.0});
            seeded_internals(b, budget, 2.0);
            for (const auto& a : budget.extra_anchors) b.internal(a);
            if (s.p == 1.0) {
              l1_linear_finite(b, dims);
              for (Index from : {Index{1}, dims + 1}) {
                b.add(L1Linear{{}, L1Linear::Tail{from, 1}});
                b.add(L1Linear{{}, L1Linear::Tail{from, -1}});
              }
              for (Index k = 1; k <= dims; ++k) {
                b.add(BusemannClosedLp{1.0, SparseVector::unit(k)});
                b.add(BusemannClosedLp{1.0, SparseVector::unit(k, -1.0)});
              }
              note = "internals, l_1 linear functionals over coordinates 1.." +
                     std::to_string(dims) + " and tails, closed-form Busemann on coordinates";
            } else {
              for (Index k = 1; k <= dims; ++k) {
                b.add(BusemannClosedLp{s.p, SparseVector::unit(k)});
                b.add(BusemannClosedLp{s.p, SparseVector::unit(k, -1.0)});
              }
              Rng rng(mix_seed(budget.seed, 0x2b));
              for (std::size_t i = 0; i < budget.random_internals; ++i) {
                SparseVector u = seeded_vector(rng, dims, 1.0);
                const double n = lp_norm(u, s.p);
                if (n == 0.0) continue;
                b.add(BusemannClosedLp{s.p, (1.0 / n) * u});
              }
              b.add(ZeroFunctional{});
              note = "internals, closed-form Busemann functionals, zero";
            }
          },
          [&](const LpBall& ball) {
            if (ball.p == 2.0) {
              const double r = ball.radius;
              constexpr std::pair<double, double> kPairs[] = {
                  {1.0, 1.0}, {0.75, 1.0}, {0.5, 1.0}, {0.5, 0.5}, {0.25, 0.5}, {0.25, 0.25}};
              for (int a = 0; a < 36; ++a) {
                const double theta = a * std::numbers::pi / 18.0;
                for (auto [rho, c] : kPairs) {
                  const double z1 = rho * r * std::cos(theta), z2 = rho * r * std::sin(theta);
                  SparseVector z = SparseVector::from_entries({{1, z1}, {2, z2}});
                  // Rounding may push ||z|| a hair above c.
                  const double cz = std::max(c * r, lp_norm(z, 2.0));
                  b.add(HilbertBall{z, std::min(cz, r)});
                }
              }
              for (double c : {0.0, 0.25, 0.5, 1.0}) b.add(HilbertBall{SparseVector{}, c * r});
              for (const auto& a : budget.extra_anchors) {
                if (auto* w = std::get_if<SparseVector>(&a); w && space.contains(a)) {
                  b.add(HilbertBall{*w, lp_norm(*w, 2.0)});
                }
              }
              note = "Hilbert-ball functionals over a (z, c) grid in the e_1/e_2 plane";
            } else {
              coordinate_internals(b, dims, {ball.radius, ball.radius / 2});
              seeded_internals(b, budget, ball.radius, ball.p, ball.radius);
              for (const auto& a : budget.extra_anchors) b.internal(a);
              note = "internals";
            }
          },
          [&](const SnowflakeLine&) {
            b.internal(space.basepoint());
            for (double v : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) b.internal(Scalar{v});
            Rng rng(mix_seed(budget.seed, 0x3c));
            for (std::size_t i = 0; i < budget.random_internals; ++i) {
              b.internal(Scalar{rng.uniform(-5.0, 5.0)});
            }
            for (const auto& a : budget.extra_anchors) b.internal(a);
            b.add(ZeroFunctional{});
            note = "internals, zero";
          },
          [&](const DiscreteSpace&) {
            b.internal(space.basepoint());
            for (Index k = 0; k <= dims; ++k) b.internal(Atom{static_cast<std::uint64_t>(k)});
            for (const auto& a : budget.extra_anchors) b.internal(a);
            b.add(ZeroFunctional{});
            note = "internals on materialized atoms, zero";
          },
          [&](const FiniteMetricSpace& f) {
            for (std::size_t i = 0; i < f.n; ++i) b.internal(Atom{i});
            note = "all internals (complete)";
          },
          [&](const CountableSubsetOfL1& c) {
            for (const auto& m : c.materialize(static_cast<std::uint64_t>(dims))) b.internal(m);
            for (const auto& a : budget.extra_anchors) b.internal(a);
            note = "internals on materialized members";
          },
          [&](const SupNormSpace&) {
            b.internal(PLFunction{});
            b.internal(PLFunction::constant(1.0));
            b.internal(PLFunction::constant(-1.0));
            Rng rng(mix_seed(budget.seed, 0x4d));
            for (std::size_t i = 0; i < budget.random_internals; ++i) {
              b.internal(sample_point(space, rng));
            }
            for (const auto& a : budget.extra_anchors) b.internal(a);
            for (int k = 0; k <= 8; ++k) {
              b.add(PointEval{k / 8.0, 1});
              b.add(PointEval{k / 8.0, -1});
            }
            note = "internals, point evaluations on t = k/8";
          },
      },
      space.kind());

  return FunctionalFamily{space, b.take(), std::move(note)};
}

}  // namespace dweak
