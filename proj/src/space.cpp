#include "dweak/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dweak/errors.hpp"

namespace dweak {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgumentError("l_p exponent must lie in [1, inf)");
  }
}

}  // namespace

bool CountableSubsetOfL1::contains(const SparseVector& x) const {
  if (std::find(listed.begin(), listed.end(), x) != listed.end()) return true;
  if (!ray || x.support_size() != 1) return false;
  const auto& e = x.entries().front();
  return e.value == ray->coefficient(static_cast<std::uint64_t>(e.index));
}

std::vector<SparseVector> CountableSubsetOfL1::materialize(std::uint64_t count) const {
  std::vector<SparseVector> out = listed;
  if (ray) {
    for (std::uint64_t n = 1; n <= count; ++n) {
      auto v = SparseVector::unit(static_cast<Index>(n), ray->coefficient(n));
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
  return out;
}

Space::Space(SpaceKind kind, Point basepoint)
    : data_(std::make_shared<const Data>(Data{std::move(kind), std::move(basepoint)})) {
  require_member(data_->basepoint, "basepoint");
}

Space Space::lp(double p) {
  check_p(p);
  return Space(LpSpace{p}, SparseVector{});
}

Space Space::lp_ball(double p, double radius) {
  check_p(p);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgumentError("ball radius must be positive");
  }
  return Space(LpBall{p, radius}, SparseVector{});
}

Space Space::snowflake(double alpha, double base) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgumentError("snowflake exponent must lie in (0, 1)");
  }
  return Space(SnowflakeLine{alpha}, Scalar{base});
}

Space Space::discrete(std::uint64_t base) { return Space(DiscreteSpace{}, Atom{base}); }

Space Space::finite(std::vector<std::vector<double>> matrix, std::uint64_t base) {
  const std::size_t n = matrix.size();
  if (n == 0) throw InvalidArgumentError("finite metric space needs at least one point");
  FiniteMetricSpace fs;
  fs.n = n;
  fs.matrix.reserve(n * n);
  for (const auto& row : matrix) {
    if (row.size() != n) throw InvalidArgumentError("distance matrix must be square");
    for (double v : row) {
      if (!std::isfinite(v)) throw InvalidArgumentError("distance matrix entries must be finite");
      fs.matrix.push_back(v);
    }
  }
  return Space(std::move(fs), Atom{base});
}

Space Space::finite_discrete(std::size_t n, std::uint64_t base) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
  return finite(std::move(m), base);
}

Space Space::countable_l1(std::vector<SparseVector> listed,
                          std::optional<CountableSubsetOfL1::Ray> ray,
                          std::optional<SparseVector> base) {
  return Space(CountableSubsetOfL1{std::move(listed), ray}, base.value_or(SparseVector{}));
}

Space Space::sup_norm() { return Space(SupNormSpace{}, PLFunction{}); }

bool Space::is_normed() const noexcept {
  return as<LpSpace>() != nullptr || as<SupNormSpace>() != nullptr;
}

bool Space::supports_w_map() const noexcept { return is_normed() || as<LpBall>() != nullptr; }

std::optional<double> Space::lp_exponent() const noexcept {
  if (auto* s = as<LpSpace>()) return s->p;
  if (auto* s = as<LpBall>()) return s->p;
  if (as<CountableSubsetOfL1>()) return 1.0;
  return std::nullopt;
}

bool Space::contains(const Point& x) const {
  return std::visit(
      overloaded{
          [&](const LpSpace&) { return std::holds_alternative<SparseVector>(x); },
          [&](const LpBall& b) {
            auto* v = std::get_if<SparseVector>(&x);
            return v != nullptr && lp_norm(*v, b.p) <= b.radius + kBallSlack;
          },
          [&](const SnowflakeLine&) { return std::holds_alternative<Scalar>(x); },
          [&](const DiscreteSpace&) { return std::holds_alternative<Atom>(x); },
          [&](const FiniteMetricSpace& f) {
            auto* a = std::get_if<Atom>(&x);
            return a != nullptr && a->id < f.n;
          },
          [&](const CountableSubsetOfL1& c) {
            auto* v = std::get_if<SparseVector>(&x);
            return v != nullptr && c.contains(*v);
          },
          [&](const SupNormSpace&) { return std::holds_alternative<PLFunction>(x); },
      },
      data_->kind);
}

void Space::require_member(const Point& x, const char* what) const {
  if (!contains(x)) {
    throw MembershipError(std::string(what) + " " + to_string(x) + " is not a member of " + name());
  }
}

std::string Space::name() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const LpSpace& s) { os << "l_" << s.p; },
                 [&](const LpBall& b) { os << "ball(l_" << b.p << ", r=" << b.radius << ')'; },
                 [&](const SnowflakeLine& s) { os << "snowflake(alpha=" << s.alpha << ')'; },
                 [&](const DiscreteSpace&) { os << "discrete"; },
                 [&](const FiniteMetricSpace& f) { os << "finite(n=" << f.n << ')'; },
                 [&](const CountableSubsetOfL1&) { os << "countable subset of l_1"; },
                 [&](const SupNormSpace&) { os << "C[0,1] (piecewise linear)"; },
             },
             data_->kind);
  return os.str();
}

double distance_unchecked(const Space& space, const Point& x, const Point& y) {
  return std::visit(
      overloaded{
          [&](const LpSpace& s) {
            return lp_distance(std::get<SparseVector>(x), std::get<SparseVector>(y), s.p);
          },
          [&](const LpBall& b) {
            return lp_distance(std::get<SparseVector>(x), std::get<SparseVector>(y), b.p);
          },
          [&](const SnowflakeLine& s) {
            return std::pow(std::abs(std::get<Scalar>(x).value - std::get<Scalar>(y).value),
                            s.alpha);
          },
          [&](const DiscreteSpace&) { return std::get<Atom>(x) == std::get<Atom>(y) ? 0.0 : 1.0; },
          [&](const FiniteMetricSpace& f) {
            return f.at(std::get<Atom>(x).id, std::get<Atom>(y).id);
          },
          [&](const CountableSubsetOfL1&) {
            return lp_distance(std::get<SparseVector>(x), std::get<SparseVector>(y), 1.0);
          },
          [&](const SupNormSpace&) {
            return sup_distance(std::get<PLFunction>(x), std::get<PLFunction>(y));
          },
      },
      space.kind());
}

double distance(const Space& space, const Point& x, const Point& y) {
  space.require_member(x, "x");
  space.require_member(y, "y");
  return distance_unchecked(space, x, y);
}

double norm(const Space& space, const Point& x) {
  if (auto* v = std::get_if<SparseVector>(&x)) {
    auto p = space.lp_exponent();
    if (!p) throw NotNormedSpaceError(space.name() + " has no norm");
    return lp_norm(*v, *p);
  }
  if (auto* f = std::get_if<PLFunction>(&x)) return sup_norm(*f);
  throw NotNormedSpaceError(space.name() + " has no norm");
}

Point linear_combination(const Space& space, double s, const Point& x, double t, const Point& y) {
  if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not a normed space");
  if (space.as<SupNormSpace>()) {
    return linear_combination(s, std::get<PLFunction>(x), t, std::get<PLFunction>(y));
  }
  return linear_combination(s, std::get<SparseVector>(x), t, std::get<SparseVector>(y));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_finite(const FiniteMetricSpace& f, ValidationReport& report) {
  const double scale = *std::max_element(f.matrix.begin(), f.matrix.end());
  const double slack = 1e-12 * std::max(1.0, scale);
  for (std::size_t i = 0; i < f.n; ++i) {
    ++report.checks;
    if (f.at(i, i) != 0.0) {
      report.violations.push_back({"diagonal", "d(" + std::to_string(i) + "," + std::to_string(i) +
                                                   ") != 0",
                                   {Atom{i}}});
    }
    for (std::size_t j = i + 1; j < f.n; ++j) {
      ++report.checks;
      if (f.at(i, j) != f.at(j, i)) {
        report.violations.push_back(
            {"symmetry", "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" +
                             std::to_string(j) + "," + std::to_string(i) + ")",
             {Atom{i}, Atom{j}}});
      }
      if (!(f.at(i, j) > 0.0) || !(f.at(j, i) > 0.0)) {
        report.violations.push_back(
            {"positivity", "d(" + std::to_string(i) + "," + std::to_string(j) + ") <= 0",
             {Atom{i}, Atom{j}}});
      }
    }
  }
  for (std::size_t i = 0; i < f.n; ++i) {
    for (std::size_t k = i + 1; k < f.n; ++k) {
      for (std::size_t j = 0; j < f.n; ++j) {
        if (j == i || j == k) continue;
        ++report.checks;
        if (f.at(i, k) > f.at(i, j) + f.at(j, k) + slack) {
          std::ostringstream os;
          os << "d(" << i << "," << k << ")=" << f.at(i, k) << " > d(" << i << "," << j
             << ")+d(" << j << "," << k << ")=" << f.at(i, j) + f.at(j, k);
          report.violations.push_back({"triangle", os.str(), {Atom{i}, Atom{j}, Atom{k}}});
        }
      }
    }
  }
}

void validate_sampled(const Space& space, ValidationReport& report, std::size_t samples) {
  Rng rng(report.seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Point x = sample_point(space, rng);
    Point y = sample_point(space, rng);
    Point z = sample_point(space, rng);
    const double dxy = distance(space, x, y);
    const double dyx = distance(space, y, x);
    const double dxz = distance(space, x, z);
    const double dyz = distance(space, y, z);
    const double dxx = distance(space, x, x);
    report.checks += 4;
    const double slack = 1e-9 * std::max(1.0, dxy + dyz);
    if (dxy < 0.0) report.violations.push_back({"positivity", "negative distance", {x, y}});
    if (dxy != dyx) report.violations.push_back({"symmetry", "d(x,y) != d(y,x)", {x, y}});
    if (dxx != 0.0) report.violations.push_back({"diagonal", "d(x,x) != 0", {x}});
    if ((dxy == 0.0) != (x == y)) {
      report.violations.push_back({"identity", "d(x,y)=0 does not match x=y", {x, y}});
    }
    if (dxz > dxy + dyz + slack) {
      report.violations.push_back({"triangle", "d(x,z) > d(x,y) + d(y,z)", {x, y, z}});
    }
  }
}

}  // namespace

ValidationReport validate_space(const Space& space, std::uint64_t seed, std::size_t samples) {
  ValidationReport report;
  report.seed = seed;
  if (auto* f = space.as<FiniteMetricSpace>()) {
    validate_finite(*f, report);
  } else {
    validate_sampled(space, report, samples);
  }
  return report;
}

// ---------------------------------------------------------------------------

Point w_combine(const Space& space, const Point& x, const Point& y, double t) {
  if (!space.supports_w_map()) {
    throw UnsupportedSpaceError("no W-map on " + space.name());
  }
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgumentError("W-map parameter must lie in [0, 1]");
  space.require_member(x, "x");
  space.require_member(y, "y");
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  if (space.as<SupNormSpace>()) {
    return linear_combination(1.0 - t, std::get<PLFunction>(x), t, std::get<PLFunction>(y));
  }
  return linear_combination(1.0 - t, std::get<SparseVector>(x), t, std::get<SparseVector>(y));
}

std::vector<std::uint64_t> hull(const Space& space, const std::vector<std::uint64_t>& members) {
  const auto* f = space.as<FiniteMetricSpace>();
  if (f == nullptr) throw UnsupportedSpaceError("hull is computed on finite metric spaces only");
  if (members.empty()) throw EmptyInputError("hull of an empty set");
  for (auto a : members) space.require_member(Atom{a}, "hull member");

  // For each center q the smallest closed ball containing A has radius
  // max_a d(a, q); larger radii only enlarge the ball.
  std::vector<bool> inside(f->n, true);
  for (std::size_t q = 0; q < f->n; ++q) {
    double r = 0.0;
    for (auto a : members) r = std::max(r, f->at(a, q));
    for (std::size_t x = 0; x < f->n; ++x) {
      if (f->at(x, q) > r) inside[x] = false;
    }
  }
  std::vector<std::uint64_t> out;
  for (std::size_t x = 0; x < f->n; ++x) {
    if (inside[x]) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr Index kSampleDimension = 6;

SparseVector sample_sparse(Rng& rng, double scale) {
  std::vector<SparseVector::Entry> entries;
  for (Index k = 1; k <= kSampleDimension; ++k) {
    if (rng.uniform() < 0.6) entries.push_back({k, rng.uniform(-scale, scale)});
  }
  return SparseVector::from_entries(std::move(entries));
}

}  // namespace

Point sample_point(const Space& space, Rng& rng) {
  return std::visit(
      overloaded{
          [&](const LpSpace&) -> Point { return sample_sparse(rng, 2.0); },
          [&](const LpBall& b) -> Point {
            SparseVector v = sample_sparse(rng, 1.0);
            const double n = lp_norm(v, b.p);
            if (n == 0.0) return v;
            // Radius uniform in [0, r], clamped into the ball.
            const double target = b.radius * rng.uniform();
            SparseVector out = (target / n) * v;
            while (lp_norm(out, b.p) > b.radius) out = (1.0 - 1e-15) * out;
            return out;
          },
          [&](const SnowflakeLine&) -> Point { return Scalar{rng.uniform(-10.0, 10.0)}; },
          [&](const DiscreteSpace&) -> Point { return Atom{rng.below(10)}; },
          [&](const FiniteMetricSpace& f) -> Point { return Atom{rng.below(f.n)}; },
          [&](const CountableSubsetOfL1& c) -> Point {
            auto members = c.materialize(10);
            return members[rng.below(members.size())];
          },
          [&](const SupNormSpace&) -> Point {
            const std::size_t interior = rng.below(5);
            std::vector<double> knots{0.0};
            for (std::size_t i = 0; i < interior; ++i) knots.push_back(rng.uniform(0.01, 0.99));
            knots.push_back(1.0);
            std::sort(knots.begin(), knots.end());
            knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
            std::vector<double> values;
            for (std::size_t i = 0; i < knots.size(); ++i) values.push_back(rng.uniform(-2.0, 2.0));
            return PLFunction::make(std::move(knots), std::move(values));
          },
      },
      space.kind());
}

}  // namespace dweak
