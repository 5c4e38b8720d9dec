#include "dweak/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

constexpr double kUnitSlack = 1e-12;

bool zero_basepoint(const Space& space) {
  const auto* v = std::get_if<SparseVector>(&space.basepoint());
  return v != nullptr && v->empty();
}

double internal_value(const Space& space, const Point& w, const Point& x) {
  if (auto* xs = std::get_if<SparseVector>(&x); xs != nullptr && zero_basepoint(space)) {
    return lp_internal_value(*xs, std::get<SparseVector>(w), *space.lp_exponent());
  }
  if (auto* s = space.as<SnowflakeLine>()) {
    const double o = std::get<Scalar>(space.basepoint()).value;
    const double wv = std::get<Scalar>(w).value;
    return pow_abs_difference(o - wv, o - std::get<Scalar>(x).value, s->alpha);
  }
  if (space.as<SupNormSpace>()) {
    const auto& wf = std::get<PLFunction>(w);
    return sup_distance(std::get<PLFunction>(x), wf) - sup_norm(wf);
  }
  return distance_unchecked(space, x, w) - distance_unchecked(space, space.basepoint(), w);
}

double unit_norm_or_throw(const Space& space, const Point& u) {
  const double n = norm(space, u);
  if (std::abs(n - 1.0) > kUnitSlack) {
    std::ostringstream os;
    os.precision(17);
    os << "direction " << to_string(u) << " has norm " << n << ", expected 1";
    throw NotUnitVectorError(os.str());
  }
  return n;
}

// ||x - t u||_inf - t, evaluated knot by knot without cancellation.
double sup_norm_excess(const PLFunction& x, const PLFunction& u, double t) {
  double m = -std::numeric_limits<double>::infinity();
  for (double s : merged_knots(x, u)) {
    const double xs = x(s), us = u(s);
    double g;
    if (t * std::abs(us) > std::abs(xs)) {
      g = t * (std::abs(us) - 1.0) - std::copysign(1.0, us) * xs;
    } else {
      g = std::abs(xs - t * us) - t;
    }
    m = std::max(m, g);
  }
  return m;
}

BusemannValue busemann_schedule(const Space& space, const Point& u, const Point& x, double tol,
                                int max_doublings) {
  auto f = [&](double t) {
    if (auto* xs = std::get_if<SparseVector>(&x)) {
      return lp_norm_excess(*xs, std::get<SparseVector>(u), t, *space.lp_exponent());
    }
    return sup_norm_excess(std::get<PLFunction>(x), std::get<PLFunction>(u), t);
  };
  BusemannValue out;
  double t = 1.0;
  double best = f(t);
  for (int k = 0; k < max_doublings; ++k) {
    t *= 2.0;
    const double cur = std::min(best, f(t));
    const double improvement = best - cur;
    best = cur;
    if (improvement < tol) {
      out.converged = true;
      break;
    }
  }
  out.value = std::max(best, -norm(space, x));
  out.t_final = t;
  return out;
}

double closed_lp_value(double p, const SparseVector& u, const SparseVector& x) {
  double s = 0.0;
  if (p == 1.0) {
    for (const auto& e : x.entries()) {
      const double uk = u.at(e.index);
      s += (uk != 0.0) ? -std::copysign(1.0, uk) * e.value : std::abs(e.value);
    }
    return s;
  }
  for (const auto& e : u.entries()) {
    const double xk = x.at(e.index);
    if (xk == 0.0) continue;
    const double f = std::copysign(std::pow(std::abs(e.value), p - 1.0), e.value);
    s -= f * xk;
  }
  return s;
}

double hilbert_value(const HilbertBall& hb, const SparseVector& x) {
  const double xx = dot(x, x);
  const double numerator = xx - 2.0 * dot(x, hb.z);
  const double dz = lp_distance(x, hb.z, 2.0);
  const double zz = dot(hb.z, hb.z);
  const double q = std::max(0.0, dz * dz + (hb.c * hb.c - zz));
  const double denominator = std::sqrt(q) + hb.c;
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

double l1_linear_value(const L1Linear& l, const SparseVector& x) {
  double s = 0.0;
  for (const auto& e : x.entries()) {
    auto it = std::lower_bound(l.signs.begin(), l.signs.end(), e.index,
                               [](const auto& a, Index k) { return a.first < k; });
    if (it != l.signs.end() && it->first == e.index) {
      s += it->second * e.value;
    } else if (l.tail && e.index >= l.tail->from) {
      s += l.tail->sign * e.value;
    }
  }
  return s;
}

void validate(const Space& space, FunctionalKind& kind) {
  std::visit(
      overloaded{
          [&](Internal& k) { space.require_member(k.w, "internal anchor"); },
          [&](BusemannNumeric& k) {
            if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
            space.require_member(k.u, "Busemann direction");
            unit_norm_or_throw(space, k.u);
            if (!(k.tol > 0.0) || k.max_doublings < 1) {
              throw InvalidArgumentError("Busemann schedule needs tol > 0 and >= 1 doubling");
            }
          },
          [&](BusemannClosedLp& k) {
            const auto* lp = space.as<LpSpace>();
            if (lp == nullptr || lp->p != k.p) {
              throw UnsupportedSpaceError("closed-form Busemann functional needs l_" +
                                          std::to_string(k.p) + ", got " + space.name());
            }
            unit_norm_or_throw(space, k.u);
          },
          [&](L1Linear& k) {
            if (space.lp_exponent() != 1.0) {
              throw UnsupportedSpaceError("l_1 linear functional on " + space.name());
            }
            std::sort(k.signs.begin(), k.signs.end());
            for (std::size_t i = 0; i < k.signs.size(); ++i) {
              if (k.signs[i].first < 1) throw InvalidArgumentError("index set entries must be >= 1");
              if (k.signs[i].second != 1 && k.signs[i].second != -1) {
                throw InvalidArgumentError("signs must be +1 or -1");
              }
              if (i > 0 && k.signs[i].first == k.signs[i - 1].first) {
                throw InvalidArgumentError("duplicate index in l_1 linear functional");
              }
            }
            if (k.tail && ((k.tail->sign != 1 && k.tail->sign != -1) || k.tail->from < 1)) {
              throw InvalidArgumentError("tail needs sign +1/-1 and from >= 1");
            }
          },
          [&](HilbertBall& k) {
            const auto p = space.lp_exponent();
            if (p != 2.0 || space.as<CountableSubsetOfL1>()) {
              throw UnsupportedSpaceError("Hilbert-ball functional on " + space.name());
            }
            const double zn = lp_norm(k.z, 2.0);
            if (!(zn <= k.c + kUnitSlack)) {
              throw InvalidArgumentError("Hilbert-ball functional needs ||z|| <= c");
            }
            if (auto* b = space.as<LpBall>(); b != nullptr && !(k.c <= b->radius + kUnitSlack)) {
              throw InvalidArgumentError("Hilbert-ball functional needs c <= r");
            }
          },
          [&](PointEval& k) {
            if (!space.as<SupNormSpace>()) {
              throw UnsupportedSpaceError("point evaluation on " + space.name());
            }
            if (!(k.t >= 0.0 && k.t <= 1.0)) throw InvalidArgumentError("t must lie in [0, 1]");
            if (k.sign != 1 && k.sign != -1) throw InvalidArgumentError("sign must be +1 or -1");
          },
          [&](ZeroFunctional&) {},
          [&](Rebased& k) {
            if (!k.inner || !(k.inner->space() == space)) {
              throw InvalidArgumentError("rebased functional must live on the same space");
            }
            space.require_member(k.b, "rebase point");
            k.offset = (*k.inner)(k.b);
          },
          [&](ShiftScaleView& k) {
            if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
            if (k.s == 0.0) throw ZeroScaleError("shift/scale needs s != 0");
            space.require_member(k.w, "internal anchor");
            space.require_member(k.v, "shift vector");
          },
      },
      kind);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

MetricFunctional::MetricFunctional(Space space, FunctionalKind kind)
    : space_(std::move(space)), kind_(std::move(kind)) {
  validate(space_, kind_);
}

MetricFunctional MetricFunctional::internal(Space space, Point w) {
  return MetricFunctional(std::move(space), Internal{std::move(w)});
}

MetricFunctional MetricFunctional::zero(Space space) {
  return MetricFunctional(std::move(space), ZeroFunctional{});
}

double MetricFunctional::operator()(const Point& x) const {
  return std::visit(
      overloaded{
          [&](const Internal& k) { return internal_value(space_, k.w, x); },
          [&](const BusemannNumeric& k) {
            return busemann_schedule(space_, k.u, x, k.tol, k.max_doublings).value;
          },
          [&](const BusemannClosedLp& k) {
            return closed_lp_value(k.p, k.u, std::get<SparseVector>(x));
          },
          [&](const L1Linear& k) { return l1_linear_value(k, std::get<SparseVector>(x)); },
          [&](const HilbertBall& k) { return hilbert_value(k, std::get<SparseVector>(x)); },
          [&](const PointEval& k) { return k.sign * std::get<PLFunction>(x)(k.t); },
          [&](const ZeroFunctional&) { return 0.0; },
          [&](const Rebased& k) { return (*k.inner)(x) - k.offset; },
          [&](const ShiftScaleView& k) {
            const Point moved = linear_combination(space_, k.s, x, k.t, k.v);
            const Point shift = linear_combination(space_, 0.0, x, k.t, k.v);
            return (internal_value(space_, k.w, moved) - internal_value(space_, k.w, shift)) /
                   std::abs(k.s);
          },
      },
      kind_);
}

std::optional<Point> MetricFunctional::internal_anchor() const {
  if (auto* k = as<Internal>()) return k->w;
  if (auto* k = as<Rebased>()) return k->inner->internal_anchor();
  return std::nullopt;
}

bool MetricFunctional::is_busemann() const noexcept {
  return as<BusemannNumeric>() != nullptr || as<BusemannClosedLp>() != nullptr;
}

std::string MetricFunctional::describe() const {
  return std::visit(
      overloaded{
          [&](const Internal& k) { return "internal(w=" + to_string(k.w) + ")"; },
          [&](const BusemannNumeric& k) { return "busemann_numeric(u=" + to_string(k.u) + ")"; },
          [&](const BusemannClosedLp& k) {
            return "busemann_closed(p=" + fmt(k.p) + ", u=" + to_string(k.u) + ")";
          },
          [&](const L1Linear& k) {
            std::string s = "l1_linear(I={";
            for (std::size_t i = 0; i < k.signs.size(); ++i) {
              if (i) s += ", ";
              s += std::to_string(k.signs[i].first) + (k.signs[i].second > 0 ? ":+" : ":-");
            }
            s += "}";
            if (k.tail) {
              s += ", tail k>=" + std::to_string(k.tail->from) + (k.tail->sign > 0 ? ":+" : ":-");
            }
            return s + ")";
          },
          [&](const HilbertBall& k) {
            return "hilbert_ball(z=" + to_string(k.z) + ", c=" + fmt(k.c) + ")";
          },
          [&](const PointEval& k) {
            return std::string(k.sign > 0 ? "+" : "-") + "eval(t=" + fmt(k.t) + ")";
          },
          [&](const ZeroFunctional&) { return std::string("zero"); },
          [&](const Rebased& k) {
            return "rebased(" + k.inner->describe() + ", b=" + to_string(k.b) + ")";
          },
          [&](const ShiftScaleView& k) {
            return "shift_scale(w=" + to_string(k.w) + ", s=" + fmt(k.s) + ", t=" + fmt(k.t) +
                   ", v=" + to_string(k.v) + ")";
          },
      },
      kind_);
}

double eval(const MetricFunctional& h, const Point& x) {
  h.space().require_member(x, "x");
  return h(x);
}

BusemannValue busemann_numeric(const Space& space, const Point& u, const Point& x, double tol,
                               int max_doublings) {
  if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
  space.require_member(u, "u");
  space.require_member(x, "x");
  unit_norm_or_throw(space, u);
  return busemann_schedule(space, u, x, tol, max_doublings);
}

double busemann_closed_lp(double p, const SparseVector& u, const SparseVector& x) {
  if (!(p >= 1.0)) throw InvalidArgumentError("p must lie in [1, inf)");
  const double n = lp_norm(u, p);
  if (std::abs(n - 1.0) > kUnitSlack) {
    throw NotUnitVectorError("direction " + to_string(u) + " is not a unit vector");
  }
  return closed_lp_value(p, u, x);
}

MetricFunctional rebase(const MetricFunctional& h, const Point& b) {
  if (auto* r = h.as<Rebased>()) {
    return MetricFunctional(h.space(), Rebased{r->inner, b, 0.0});
  }
  return MetricFunctional(h.space(), Rebased{std::make_shared<const MetricFunctional>(h), b, 0.0});
}

ShiftScale shift_scale(const MetricFunctional& h, double s, double t, const Point& v) {
  const auto* in = h.as<Internal>();
  if (in == nullptr) throw InvalidArgumentError("shift/scale applies to internals only");
  const Space& space = h.space();
  if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
  if (s == 0.0) throw ZeroScaleError("shift/scale needs s != 0");
  space.require_member(v, "v");
  // z = s^{-1}(w - t v)
  const Point z = linear_combination(space, 1.0 / s, in->w, -t / s, v);
  const Point tv = linear_combination(space, 0.0, v, t, v);
  MetricFunctional eta = MetricFunctional::internal(space, z);
  MetricFunctional view(space, ShiftScaleView{in->w, s, t, v});
  return ShiftScale{std::move(eta), h(tv), std::move(view)};
}

Separation separating_busemann(const Space& space, const Point& x, const Point& y) {
  if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
  space.require_member(x, "x");
  space.require_member(y, "y");
  if (x == y) throw EqualPointsError("separation needs x != y");
  const double d = distance(space, x, y);
  const Point u = linear_combination(space, 1.0 / d, x, -1.0 / d, y);
  FunctionalKind kind;
  if (auto* lp = space.as<LpSpace>()) {
    kind = BusemannClosedLp{lp->p, std::get<SparseVector>(u)};
  } else {
    kind = BusemannNumeric{u};
  }
  MetricFunctional h(space, std::move(kind));
  const double gap = h(y) - h(x);
  return Separation{std::move(h), gap};
}

NormSup norm_via_busemann(const Space& space, const Point& v, std::size_t n_directions,
                          std::uint64_t seed) {
  if (!space.is_normed()) throw NotNormedSpaceError(space.name() + " is not normed");
  space.require_member(v, "v");
  auto make = [&](const Point& u) -> MetricFunctional {
    if (auto* lp = space.as<LpSpace>()) {
      return MetricFunctional(space, BusemannClosedLp{lp->p, std::get<SparseVector>(u)});
    }
    return MetricFunctional(space, BusemannNumeric{u});
  };
  NormSup out;
  const double nv = norm(space, v);
  if (nv == 0.0) {
    out.witness = space.as<SupNormSpace>() ? Point{PLFunction::constant(1.0)}
                                           : Point{SparseVector::unit(1)};
  } else {
    out.witness = linear_combination(space, -1.0 / nv, v, 0.0, v);
  }
  out.sup_value = make(out.witness)(v);
  Rng rng(seed);
  out.max_sampled = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_directions; ++i) {
    Point u = sample_point(space, rng);
    const double nu = norm(space, u);
    if (nu == 0.0) continue;
    u = linear_combination(space, 1.0 / nu, u, 0.0, u);
    const double val = make(u)(v);
    out.max_sampled = std::max(out.max_sampled, val);
    ++out.directions;
  }
  if (out.directions == 0) out.max_sampled = out.sup_value;
  out.sup_value = std::max(out.sup_value, out.max_sampled);
  return out;
}

bool PropertyReport::ok(double tol) const {
  return std::abs(basepoint_value) <= tol && max_lipschitz_excess <= tol &&
         max_w_convexity_violation <= tol && max_subadditivity_violation.value_or(0.0) <= tol &&
         max_homogeneity_residual.value_or(0.0) <= tol;
}

PropertyReport check_properties(const MetricFunctional& h, std::size_t samples,
                                std::uint64_t seed) {
  const Space& space = h.space();
  PropertyReport r;
  r.samples = samples;
  r.seed = seed;
  r.basepoint_value = h(space.basepoint());
  Rng rng(seed);
  const bool busemann = h.is_busemann() && space.is_normed();
  if (busemann) {
    r.max_subadditivity_violation = 0.0;
    r.max_homogeneity_residual = 0.0;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const Point x = sample_point(space, rng);
    const Point y = sample_point(space, rng);
    const double hx = h(x), hy = h(y);
    const double d = distance_unchecked(space, x, y);
    const double diff = std::abs(hx - hy);
    r.max_lipschitz_excess = std::max(r.max_lipschitz_excess, diff - d);
    if (d > 0.0) r.max_lipschitz_ratio = std::max(r.max_lipschitz_ratio, diff / d);
    if (space.supports_w_map()) {
      const double t = rng.uniform();
      const Point m = w_combine(space, x, y, t);
      r.max_w_convexity_violation =
          std::max(r.max_w_convexity_violation, h(m) - ((1.0 - t) * hx + t * hy));
    }
    if (busemann) {
      const Point sum = linear_combination(space, 1.0, x, 1.0, y);
      *r.max_subadditivity_violation =
          std::max(*r.max_subadditivity_violation, h(sum) - hx - hy);
      const double s = rng.uniform(0.0, 3.0);
      const Point sx = linear_combination(space, s, x, 0.0, x);
      *r.max_homogeneity_residual = std::max(*r.max_homogeneity_residual, std::abs(h(sx) - s * hx));
    }
  }
  return r;
}

FunctionalFamily rebase_family(const FunctionalFamily& family, const Point& b) {
  FunctionalFamily out{family.space, {}, family.coverage_note + " (rebased at " + to_string(b) + ")"};
  out.members.reserve(family.members.size());
  for (const auto& h : family.members) out.members.push_back(rebase(h, b));
  return out;
}

}  // namespace dweak
