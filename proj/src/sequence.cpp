#include "dweak/sequence.hpp"

#include <cmath>

#include "dweak/errors.hpp"

namespace dweak {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Point add_scaled(const Point& acc, double c, const Point& x) {
  return std::visit(
      overloaded{
          [&](const SparseVector& a) -> Point {
            return linear_combination(1.0, a, c, std::get<SparseVector>(x));
          },
          [&](const PLFunction& a) -> Point {
            return linear_combination(1.0, a, c, std::get<PLFunction>(x));
          },
          [&](const Scalar& a) -> Point { return Scalar{a.value + c * std::get<Scalar>(x).value}; },
          [&](const Atom&) -> Point {
            throw InvalidArgumentError("formula terms cannot combine atoms");
          },
      },
      acc);
}

Point zero_like(const Point& x) {
  return std::visit(overloaded{
                        [](const SparseVector&) -> Point { return SparseVector{}; },
                        [](const PLFunction&) -> Point { return PLFunction{}; },
                        [](const Scalar&) -> Point { return Scalar{0.0}; },
                        [](const Atom&) -> Point {
                          throw InvalidArgumentError("formula terms cannot combine atoms");
                        },
                    },
                    x);
}

}  // namespace

SequenceSpec::SequenceSpec(Space space, Generator generator)
    : space_(std::move(space)), generator_(std::move(generator)) {
  std::visit(overloaded{
                 [](const ExplicitList& g) {
                   if (g.period.empty()) {
                     throw InvalidArgumentError("explicit sequence needs a nonempty period");
                   }
                 },
                 [](const Interleave& g) {
                   if (!g.a || !g.b) throw InvalidArgumentError("interleave needs two sequences");
                 },
                 [&](const Combination& g) {
                   if (!g.a || !g.b) throw InvalidArgumentError("combination needs two sequences");
                   if (!space_.supports_w_map()) {
                     throw NotNormedSpaceError("linear combination of sequences in " +
                                               space_.name());
                   }
                 },
                 [](const UserFormula& g) {
                   if (g.terms.empty()) throw InvalidArgumentError("formula needs a term");
                 },
                 [](const SeededRandomBounded& g) {
                   if (g.width < 1 || !(g.min_norm >= 0.0) || !(g.max_norm >= g.min_norm)) {
                     throw InvalidArgumentError("random sequence needs width >= 1 and "
                                                "0 <= min_norm <= max_norm");
                   }
                 },
                 [](const auto&) {},
             },
             generator_);
}

Point SequenceSpec::at(std::uint64_t n) const {
  if (n == 0) throw InvalidArgumentError("sequence indices start at 1");
  const double nd = static_cast<double>(n);
  return std::visit(
      overloaded{
          [&](const ExplicitList& g) -> Point {
            if (n <= g.prefix.size()) return g.prefix[n - 1];
            return g.period[(n - g.prefix.size() - 1) % g.period.size()];
          },
          [&](const CoordinateBlowup& g) -> Point {
            return SparseVector::unit(static_cast<Index>(n), g.scale + g.growth * nd);
          },
          [&](const Alternating& g) -> Point { return (n % 2 == 1) ? g.p : g.q; },
          [&](const SeededRandomBounded& g) -> Point {
            Rng rng(mix_seed(g.seed, n));
            std::vector<SparseVector::Entry> moving;
            for (Index k = 0; k < g.width; ++k) {
              const double v = rng.uniform(-1.0, 1.0);
              moving.push_back({static_cast<Index>(n) + g.shift + k, v});
            }
            SparseVector x = SparseVector::from_entries(std::move(moving));
            const auto p = space_.lp_exponent().value_or(1.0);
            const double target = rng.uniform(g.min_norm, g.max_norm);
            const double current = lp_norm(x, p);
            if (current > 0.0) x = (target / current) * x;
            if (g.decay != 0.0 && g.decay_width > 0) {
              std::vector<SparseVector::Entry> fixed;
              for (Index k = 1; k <= g.decay_width; ++k) {
                fixed.push_back({k, g.decay * rng.uniform(-1.0, 1.0) / nd});
              }
              x = x + SparseVector::from_entries(std::move(fixed));
            }
            return x;
          },
          [&](const UserFormula& g) -> Point {
            Point acc = g.terms.front().fixed ? zero_like(*g.terms.front().fixed) : SparseVector{};
            for (const auto& term : g.terms) {
              double c = term.a * std::pow(nd, term.power);
              if (term.alternating && n % 2 == 1) c = -c;
              const Point x = term.fixed ? *term.fixed
                                         : Point{SparseVector::unit(static_cast<Index>(n) + term.offset)};
              acc = add_scaled(acc, c, x);
            }
            return acc;
          },
          [&](const DistinctAtoms& g) -> Point { return Atom{g.offset + n}; },
          [&](const Interleave& g) -> Point {
            return (n % 2 == 1) ? g.a->at((n + 1) / 2) : g.b->at(n / 2);
          },
          [&](const Combination& g) -> Point {
            const Point x = g.a->at(n), y = g.b->at(n);
            if (auto* f = std::get_if<PLFunction>(&x)) {
              return linear_combination(g.s, *f, g.t, std::get<PLFunction>(y));
            }
            return linear_combination(g.s, std::get<SparseVector>(x), g.t, std::get<SparseVector>(y));
          },
      },
      generator_);
}

std::vector<Point> SequenceSpec::materialize(std::size_t count) const {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    Point x = at(n);
    space_.require_member(x, ("term " + std::to_string(n)).c_str());
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<PeriodicForm> SequenceSpec::periodic_form() const {
  if (auto* g = std::get_if<ExplicitList>(&generator_)) return PeriodicForm{g->prefix, g->period};
  if (auto* g = std::get_if<Alternating>(&generator_)) return PeriodicForm{{}, {g->p, g->q}};
  return std::nullopt;
}

SequenceSpec interleave(const SequenceSpec& a, const SequenceSpec& b) {
  return SequenceSpec(a.space(), Interleave{std::make_shared<const SequenceSpec>(a),
                                            std::make_shared<const SequenceSpec>(b)});
}

SequenceSpec combine(double s, const SequenceSpec& a, double t, const SequenceSpec& b) {
  return SequenceSpec(a.space(), Combination{s, std::make_shared<const SequenceSpec>(a), t,
                                             std::make_shared<const SequenceSpec>(b)});
}

}  // namespace dweak
