#include "dweak/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dweak/errors.hpp"
#include "parallel.hpp"

namespace dweak {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Verdict base_verdict(const Point& z, const TesterConfig& cfg, const Windows& w) {
  Verdict v;
  v.candidate = z;
  v.window = w.window;
  v.horizon = cfg.horizon;
  v.tol = cfg.tol;
  return v;
}

// Reduces per-item classifications in order: first Persistent wins, then any
// Undetermined makes the verdict Inconclusive, else Consistent.
template <class Describe, class Fill>
void reduce(Verdict& v, const std::vector<Classified>& cls, const std::vector<ExcessStats>& stats,
            Describe&& describe, Fill&& fill_witness) {
  std::optional<std::size_t> undetermined;
  double margin = kInf;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (cls[i].trend == Trend::Persistent) {
      v.outcome = Outcome::Violation;
      v.gap = cls[i].gap;
      v.margin = -cls[i].gap;
      v.witness_term = stats[i].argmax;
      fill_witness(i);
      v.reason = describe(i) + " violates the liminf inequality by " + fmt(cls[i].gap);
      return;
    }
    if (cls[i].trend == Trend::Undetermined && !undetermined) undetermined = i;
    margin = std::min(margin, cls[i].margin);
  }
  if (undetermined) {
    const auto i = *undetermined;
    v.outcome = Outcome::Inconclusive;
    v.margin = 0.0;
    v.reason = describe(i) + " has not stabilized: window max " + fmt(stats[i].window_max) +
               ", tail max " + fmt(stats[i].tail_max);
    return;
  }
  v.outcome = Outcome::Consistent;
  v.margin = cls.empty() ? 0.0 : margin;
  if (cls.empty()) v.reason = "nothing to test";
}

}  // namespace

std::size_t TesterConfig::effective_burn_in() const {
  return burn_in.value_or(std::max<std::size_t>(1, horizon / 10));
}

Windows Windows::from(const TesterConfig& cfg) {
  const std::size_t n = cfg.horizon;
  const std::size_t b = std::max<std::size_t>(1, cfg.effective_burn_in());
  if (n < 2 || b >= n) {
    throw InvalidArgumentError("need 1 <= burn_in < horizon, got burn_in=" + std::to_string(b) +
                               ", horizon=" + std::to_string(n));
  }
  Windows w;
  w.window = {b, n};
  w.tail = {std::max(b, n / 2), n};
  w.early = {std::max(b, n / 4), w.tail.first - 1};
  w.marks = {n / 4 >= b ? n / 4 : 0, w.tail.first, n};
  return w;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Consistent: return "consistent";
    case Outcome::Violation: return "violation";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* trend_name(Trend t) {
  switch (t) {
    case Trend::Settled: return "settled";
    case Trend::Decaying: return "decaying";
    case Trend::Persistent: return "persistent";
    case Trend::Undetermined: return "undetermined";
  }
  return "?";
}

Classified classify_excess(const ExcessStats& s, const TesterConfig& cfg) {
  if (s.window_max <= cfg.tol) return {Trend::Settled, -s.window_max, 0.0};
  if (s.tail_max <= cfg.tol) return {Trend::Settled, -s.tail_max, 0.0};
  if (s.early_max > 0.0 && s.tail_max <= cfg.decay_ratio * s.early_max) {
    return {Trend::Decaying, 0.0, 0.0};
  }
  // Limit of e(n) = L + a/n + b/n^2 through the three marks.
  const auto& m = s.at_marks;
  if (s.tail_nonincreasing && !std::isnan(m[0]) && !std::isnan(m[1]) && m[2] < m[1] &&
      (8.0 * m[2] - 6.0 * m[1] + m[0]) / 3.0 <= cfg.tol) {
    return {Trend::Decaying, 0.0, 0.0};
  }
  if (s.window_max - s.tail_max <= cfg.tol) return {Trend::Persistent, 0.0, s.window_max};
  return {Trend::Undetermined, 0.0, 0.0};
}

LiminfEstimate liminf_estimate(const MetricFunctional& h, const SequenceSpec& seq,
                               const TesterConfig& cfg) {
  const Windows w = Windows::from(cfg);
  LiminfEstimate e;
  e.window = w.window;
  e.value = kInf;
  e.tail_min = kInf;
  for (std::size_t n = w.window.first; n <= w.window.last; ++n) {
    Point x = seq.at(n);
    seq.space().require_member(x, "term");
    const double v = h(x);
    if (v < e.value) {
      e.value = v;
      e.argmin = n;
    }
    if (w.tail.contains(n)) e.tail_min = std::min(e.tail_min, v);
  }
  e.stable = e.tail_min - e.value <= cfg.tol;
  return e;
}

FamilyTraces::FamilyTraces(FunctionalFamily family, const SequenceSpec& seq,
                           const TesterConfig& cfg)
    : family_(std::move(family)), cfg_(cfg), windows_(Windows::from(cfg)) {
  terms_ = seq.materialize(cfg.horizon);
  const auto& terms = terms_;
  traces_.resize(family_.members.size());
  detail::parallel_for(family_.members.size(), cfg.threads, [&](std::size_t i) {
    const auto& h = family_.members[i];
    const ExcessStats s = excess_stats(windows_, [&](std::size_t n) { return -h(terms[n - 1]); });
    Trace t{-s.window_max, -s.early_max, -s.tail_max, s.argmax};
    for (std::size_t k = 0; k < 3; ++k) t.at_marks[k] = -s.at_marks[k];
    t.tail_nondecreasing = s.tail_nonincreasing;
    traces_[i] = t;
  });
}

Verdict FamilyTraces::test(const Point& z) const {
  family_.space.require_member(z, "candidate");
  Verdict v = base_verdict(z, cfg_, windows_);
  std::vector<Classified> cls(traces_.size());
  std::vector<ExcessStats> stats(traces_.size());
  for (std::size_t i = 0; i < traces_.size(); ++i) {
    const double hz = family_.members[i](z);
    const auto& t = traces_[i];
    stats[i] = {hz - t.window_min, windows_.early.empty() ? -kInf : hz - t.early_min,
                hz - t.tail_min, t.argmin};
    for (std::size_t k = 0; k < 3; ++k) stats[i].at_marks[k] = hz - t.at_marks[k];
    stats[i].tail_nonincreasing = t.tail_nondecreasing;
    cls[i] = classify_excess(stats[i], cfg_);
  }
  const bool unsettled = std::any_of(cls.begin(), cls.end(), [](const Classified& c) {
    return c.trend == Trend::Persistent || c.trend == Trend::Undetermined;
  });
  if (unsettled) {
    const Space& space = family_.space;
    const ExcessStats d = excess_stats(
        windows_, [&](std::size_t n) { return distance_unchecked(space, terms_[n - 1], z); });
    const Trend dominating = classify_excess(d, cfg_).trend;
    if (dominating == Trend::Settled || dominating == Trend::Decaying) {
      for (auto& c : cls) {
        if (c.trend == Trend::Persistent || c.trend == Trend::Undetermined) c = {Trend::Decaying, 0.0, 0.0};
      }
    }
  }
  reduce(
      v, cls, stats, [&](std::size_t i) { return family_.members[i].describe(); },
      [&](std::size_t i) {
        v.witness = family_.members[i];
        v.witness_index = i;
      });
  return v;
}

Verdict test_dweak(const SequenceSpec& seq, const Point& z, const FunctionalFamily& family,
                   const TesterConfig& cfg) {
  seq.space().require_member(z, "candidate");
  return FamilyTraces(family, seq, cfg).test(z);
}

Verdict test_delta(const SequenceSpec& seq, const Point& z, const std::vector<Point>& probes,
                   const TesterConfig& cfg) {
  const Space& space = seq.space();
  space.require_member(z, "candidate");
  for (const auto& y : probes) space.require_member(y, "probe");
  const Windows w = Windows::from(cfg);
  const auto terms = seq.materialize(cfg.horizon);
  std::vector<double> dz(terms.size());
  for (std::size_t n = w.window.first; n <= w.window.last; ++n) {
    dz[n - 1] = distance_unchecked(space, z, terms[n - 1]);
  }
  std::vector<Classified> cls(probes.size());
  std::vector<ExcessStats> stats(probes.size());
  detail::parallel_for(probes.size(), cfg.threads, [&](std::size_t i) {
    stats[i] = excess_stats(w, [&](std::size_t n) {
      return dz[n - 1] - distance_unchecked(space, probes[i], terms[n - 1]);
    });
    cls[i] = classify_excess(stats[i], cfg);
  });
  Verdict v = base_verdict(z, cfg, w);
  reduce(
      v, cls, stats, [&](std::size_t i) { return "probe " + to_string(probes[i]); },
      [&](std::size_t i) { v.probe = probes[i]; });
  return v;
}

Verdict test_strong(const SequenceSpec& seq, const Point& z, const TesterConfig& cfg) {
  const Space& space = seq.space();
  space.require_member(z, "candidate");
  const Windows w = Windows::from(cfg);
  const auto terms = seq.materialize(cfg.horizon);
  const ExcessStats s = excess_stats(
      w, [&](std::size_t n) { return distance_unchecked(space, terms[n - 1], z); });
  Verdict v = base_verdict(z, cfg, w);
  reduce(
      v, {classify_excess(s, cfg)}, {s}, [](std::size_t) { return std::string("d(x_n, z)"); },
      [](std::size_t) {});
  return v;
}

std::vector<Point> default_delta_probes(const FunctionalFamily& family,
                                        const std::vector<Point>& grid) {
  std::vector<Point> out;
  auto push = [&](const Point& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& h : family.members) {
    if (auto a = h.internal_anchor()) push(*a);
  }
  for (const auto& g : grid) push(g);
  if (out.empty()) push(family.space.basepoint());
  return out;
}

// ---------------------------------------------------------------------------

bool RegionDescriptor::contains(const Space& space, const Point& z) const {
  switch (kind) {
    case RegionKind::AllPoints: return space.contains(z);
    case RegionKind::Empty: return false;
    case RegionKind::Singleton: return point && *point == z;
    case RegionKind::NormBall: {
      const auto* v = std::get_if<SparseVector>(&z);
      return v != nullptr && lp_norm(*v, p) <= radius + 1e-12;
    }
  }
  return false;
}

std::optional<RegionDescriptor> known_region(const SequenceSpec& seq) {
  const Space& space = seq.space();
  if (std::holds_alternative<DistinctAtoms>(seq.generator()) && space.as<DiscreteSpace>()) {
    return RegionDescriptor{RegionKind::AllPoints, 0, 0, std::nullopt, "all points"};
  }
  const auto* g = std::get_if<CoordinateBlowup>(&seq.generator());
  if (g == nullptr) return std::nullopt;
  if (auto* b = space.as<LpBall>(); b && g->growth == 0.0) {
    const double theta = std::abs(g->scale);
    if (b->p == 2.0 && b->radius == 1.0 && theta <= 1.0) {
      RegionDescriptor d{RegionKind::NormBall, 2.0, std::sqrt(1.0 + theta * theta) - 1.0,
                         std::nullopt, ""};
      d.formula = "||u||^2 + 2||u|| <= " + fmt(theta * theta);
      return d;
    }
    if (b->p == 1.0 && theta <= b->radius) {
      return RegionDescriptor{RegionKind::NormBall, 1.0, theta, std::nullopt,
                              "||u||_1 <= " + fmt(theta)};
    }
  }
  if (auto* c = space.as<CountableSubsetOfL1>(); c && c->ray) {
    const bool listed_zero =
        std::all_of(c->listed.begin(), c->listed.end(), [](const auto& v) { return v.empty(); });
    if (listed_zero && c->ray->constant == g->scale && c->ray->linear == g->growth &&
        g->growth >= 0.0 && g->scale > 0.0) {
      return RegionDescriptor{RegionKind::AllPoints, 0, 0, std::nullopt, "all points"};
    }
  }
  return std::nullopt;
}

LambdaEstimate lambda_set(const SequenceSpec& seq, const FunctionalFamily& family,
                          const std::vector<Point>& grid, const TesterConfig& cfg) {
  for (const auto& z : grid) seq.space().require_member(z, "grid point");
  LambdaEstimate est;
  est.grid = grid;
  est.traces = std::make_shared<const FamilyTraces>(family, seq, cfg);
  est.verdicts.resize(grid.size());
  detail::parallel_for(grid.size(), cfg.threads,
                       [&](std::size_t i) { est.verdicts[i] = est.traces->test(grid[i]); });
  est.descriptor = known_region(seq);
  if (est.descriptor) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const bool predicted = est.descriptor->contains(seq.space(), grid[i]);
      const auto o = est.verdicts[i].outcome;
      if (o == Outcome::Inconclusive || predicted != (o == Outcome::Consistent)) {
        ++est.disagreements;
      }
    }
  }
  return est;
}

double boundary_radius(const FamilyTraces& traces, const SparseVector& direction, double lo,
                       double hi, double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    const Verdict v = traces.test(mid * direction);
    if (v.outcome == Outcome::Consistent) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ConvexityReport check_lambda_convex_closed(const LambdaEstimate& estimate, std::size_t samples,
                                           std::uint64_t seed) {
  if (!estimate.traces) throw InvalidArgumentError("estimate carries no traces");
  const FamilyTraces& traces = *estimate.traces;
  const Space& space = traces.family().space;
  if (!space.supports_w_map()) throw UnsupportedSpaceError("no W-map on " + space.name());
  ConvexityReport r;
  r.seed = seed;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < estimate.grid.size(); ++i) {
    if (estimate.member(i)) members.push_back(i);
  }
  if (members.empty()) return r;
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Point& a = estimate.grid[members[rng.below(members.size())]];
    const Point& b = estimate.grid[members[rng.below(members.size())]];
    const double t = rng.uniform();
    const Point m = w_combine(space, a, b, t);
    ++r.pairs;
    const Verdict v = traces.test(m);
    if (v.outcome != Outcome::Consistent) {
      r.counterexamples.push_back("W(" + to_string(a) + ", " + to_string(b) + ", " + fmt(t) +
                                  ") is " + outcome_name(v.outcome) + ": " + v.reason);
    }
  }
  const auto& d = estimate.descriptor;
  if (d && d->kind == RegionKind::NormBall) {
    for (std::size_t k = 0; k < members.size() && r.boundary_checks < samples; ++k) {
      const auto* z = std::get_if<SparseVector>(&estimate.grid[members[k]]);
      if (z == nullptr || z->empty()) continue;
      const SparseVector edge = (d->radius / lp_norm(*z, d->p)) * *z;
      if (!space.contains(edge)) continue;
      ++r.boundary_checks;
      const Verdict v = traces.test(edge);
      if (v.outcome != Outcome::Consistent) {
        r.counterexamples.push_back("boundary point " + to_string(edge) + " is " +
                                    outcome_name(v.outcome) + ": " + v.reason);
      }
    }
  }
  return r;
}

}  // namespace dweak
