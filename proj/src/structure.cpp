#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "dweak/convergence.hpp"
#include "dweak/errors.hpp"

namespace dweak {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool settles(Trend t) { return t == Trend::Settled || t == Trend::Decaying; }

Point combine_points(double s, const Point& x, double t, const Point& y) {
  if (auto* f = std::get_if<PLFunction>(&x)) {
    return linear_combination(s, *f, t, std::get<PLFunction>(y));
  }
  return linear_combination(s, std::get<SparseVector>(x), t, std::get<SparseVector>(y));
}

}  // namespace

// ---------------------------------------------------------------------------

GlidingHump gliding_hump(const SequenceSpec& seq, double eps, const TesterConfig& cfg) {
  const auto* lp = seq.space().as<LpSpace>();
  if (lp == nullptr || lp->p != 1.0) {
    throw UnsupportedSpaceError("gliding hump runs in l_1, got " + seq.space().name());
  }
  if (!(eps > 0.0)) throw InvalidArgumentError("eps must be positive");
  constexpr std::size_t kMaxBlocks = 32;
  const double slack = eps / 16.0;
  const auto terms = seq.materialize(cfg.horizon);

  GlidingHump g;
  g.eps = eps;
  Index m_prev = 0;
  std::size_t n = 0;
  while (g.indices.size() < kMaxBlocks) {
    // Next term with enough mass and small leakage onto earlier blocks.
    std::optional<std::size_t> pick;
    for (std::size_t k = n + 1; k <= terms.size(); ++k) {
      const auto& x = std::get<SparseVector>(terms[k - 1]);
      if (lp_norm(x, 1.0) < eps) continue;
      double leak = 0.0;
      for (const auto& e : x.entries()) {
        if (e.index > m_prev) break;
        leak += std::abs(e.value);
      }
      if (leak <= slack) {
        pick = k;
        break;
      }
    }
    if (!pick) break;
    n = *pick;
    const auto& x = std::get<SparseVector>(terms[n - 1]);
    const auto entries = x.entries();
    // Smallest m with mass beyond m at most eps/16.
    double suffix = 0.0;
    Index m = entries.back().index;
    for (std::size_t j = entries.size(); j-- > 0;) {
      if (suffix > slack) break;
      m = entries[j].index;
      suffix += std::abs(entries[j].value);
    }
    m = std::max(m, m_prev + 1);
    for (const auto& e : entries) {
      if (e.index > m_prev && e.index <= m) g.signs.push_back({e.index, e.value > 0 ? 1 : -1});
    }
    g.indices.push_back(n);
    g.blocks.push_back({m_prev, m});
    m_prev = m;
  }
  if (g.indices.size() < 3) {
    throw PreconditionFailedError("only " + std::to_string(g.indices.size()) +
                                  " gliding-hump blocks within the horizon (need 3); norms or "
                                  "coordinatewise decay not observed");
  }
  std::map<Index, int> c(g.signs.begin(), g.signs.end());
  g.certified_min = kInf;
  for (std::size_t p = 0; p < g.indices.size(); ++p) {
    double s = 0.0;
    for (const auto& e : std::get<SparseVector>(terms[g.indices[p] - 1]).entries()) {
      auto it = c.find(e.index);
      if (it != c.end()) s += it->second * e.value;
    }
    g.values.push_back(std::abs(s));
    if (p >= 2) g.certified_min = std::min(g.certified_min, std::abs(s));
  }
  g.certified = g.certified_min >= eps / 4.0;
  return g;
}

// ---------------------------------------------------------------------------

const char* branch_name(UniformConvexBranch b) {
  switch (b) {
    case UniformConvexBranch::InternalViolation: return "internal_violation";
    case UniformConvexBranch::StrongConvergence: return "strong_convergence";
    case UniformConvexBranch::Neither: return "neither";
    case UniformConvexBranch::PreconditionNotMet: return "precondition_not_met";
  }
  return "?";
}

UniformConvexityReport uniform_convex_strong_check(const SequenceSpec& seq, const Point& xhat,
                                                   const TesterConfig& cfg, std::uint64_t seed,
                                                   std::size_t random_internals) {
  const Space& space = seq.space();
  if (space.lp_exponent() != 2.0 || space.as<CountableSubsetOfL1>()) {
    throw UnsupportedSpaceError("uniform convexity check needs l_2 or its ball, got " +
                                space.name());
  }
  space.require_member(xhat, "xhat");
  const Windows w = Windows::from(cfg);
  const auto terms = seq.materialize(cfg.horizon);
  const auto& xh = std::get<SparseVector>(xhat);
  const double nx = lp_norm(xh, 2.0);
  UniformConvexityReport r;

  const auto norms = excess_stats(w, [&](std::size_t n) {
    return std::abs(lp_norm(std::get<SparseVector>(terms[n - 1]), 2.0) - nx);
  });
  if (!settles(classify_excess(norms, cfg).trend)) {
    r.branch = UniformConvexBranch::PreconditionNotMet;
    return r;
  }

  std::vector<Point> anchors;
  if (space.contains(-xh)) anchors.push_back(-xh);
  Rng rng(seed);
  const double radius = space.as<LpBall>() ? space.as<LpBall>()->radius : 2.0;
  const Index dims = std::max<Index>(4, xh.max_index());
  for (std::size_t i = 0; i < random_internals; ++i) {
    std::vector<SparseVector::Entry> e;
    for (Index k = 1; k <= dims; ++k) e.push_back({k, rng.uniform(-1.0, 1.0)});
    SparseVector v = SparseVector::from_entries(std::move(e));
    const double n = lp_norm(v, 2.0);
    if (n > 0.0) v = (radius * rng.uniform() / n) * v;
    if (space.contains(v)) anchors.push_back(v);
  }
  for (const auto& a : anchors) {
    const auto h = MetricFunctional::internal(space, a);
    ++r.internals_tested;
    const double hz = h(xhat);
    const auto s = excess_stats(w, [&](std::size_t n) { return hz - h(terms[n - 1]); });
    const auto c = classify_excess(s, cfg);
    if (c.trend == Trend::Persistent) {
      r.branch = UniformConvexBranch::InternalViolation;
      r.witness = h;
      r.gap = c.gap;
      return r;
    }
  }
  const auto dist = excess_stats(
      w, [&](std::size_t n) { return distance_unchecked(space, terms[n - 1], xhat); });
  r.tail_distance = dist.tail_max;
  r.branch = settles(classify_excess(dist, cfg).trend) ? UniformConvexBranch::StrongConvergence
                                                       : UniformConvexBranch::Neither;
  return r;
}

// ---------------------------------------------------------------------------

const char* discrete_case_name(DiscreteCase c) {
  switch (c) {
    case DiscreteCase::EventuallyConstant: return "eventually_constant";
    case DiscreteCase::TwoAccumulation: return "two_accumulation";
    case DiscreteCase::OneInfinitePoint: return "one_infinite_point";
    case DiscreteCase::AllFinite: return "all_finite";
  }
  return "?";
}

DiscreteClassification discrete_classify(const SequenceSpec& seq, const TesterConfig& cfg) {
  const Space& space = seq.space();
  if (!space.as<DiscreteSpace>()) {
    throw UnsupportedSpaceError("discrete classification needs a discrete space, got " +
                                space.name());
  }
  const Windows w = Windows::from(cfg);
  const auto terms = seq.materialize(cfg.horizon);
  const std::size_t n = cfg.horizon;
  const Window last_quarter{std::max(w.tail.first, 3 * n / 4), n};

  DiscreteClassification out;
  std::map<std::uint64_t, std::size_t> counts;
  std::map<std::uint64_t, bool> late;
  std::uint64_t max_seen = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto id = std::get<Atom>(terms[k - 1]).id;
    max_seen = std::max(max_seen, id);
    if (!w.tail.contains(k)) continue;
    ++counts[id];
    if (last_quarter.contains(k)) late[id] = true;
  }
  for (const auto& [id, c] : counts) {
    if (c >= 2 && late[id]) out.recurrent.push_back(Atom{id});
  }

  if (counts.size() == 1) {
    out.kind = DiscreteCase::EventuallyConstant;
    out.point = Atom{counts.begin()->first};
    out.lambda = "{" + to_string(*out.point) + "}";
  } else if (out.recurrent.size() >= 2) {
    out.kind = DiscreteCase::TwoAccumulation;
    out.lambda = "empty";
  } else if (out.recurrent.size() == 1) {
    out.kind = DiscreteCase::OneInfinitePoint;
    out.point = out.recurrent.front();
    out.lambda = "{" + to_string(*out.point) + "}";
  } else {
    out.kind = DiscreteCase::AllFinite;
    out.lambda = "all points";
  }

  std::vector<Atom> cands{Atom{0}, Atom{1}, Atom{2}, Atom{3}, Atom{max_seen + 1}};
  for (const auto& a : out.recurrent) cands.push_back(a);
  if (out.point) cands.push_back(*out.point);
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  out.candidates = cands;

  FamilyBudget budget;
  budget.indices = 3;
  for (const auto& a : cands) budget.extra_anchors.push_back(a);
  const FamilyTraces traces(default_family(space, budget), seq, cfg);
  for (const auto& a : cands) {
    bool predicted = false;
    switch (out.kind) {
      case DiscreteCase::EventuallyConstant:
      case DiscreteCase::OneInfinitePoint: predicted = (a == *out.point); break;
      case DiscreteCase::TwoAccumulation: predicted = false; break;
      case DiscreteCase::AllFinite: predicted = true; break;
    }
    out.verdicts.push_back(traces.test(a));
    if ((out.verdicts.back().outcome == Outcome::Consistent) != predicted) ++out.disagreements;
  }
  return out;
}

// ---------------------------------------------------------------------------

Verdict linear_combination_check(const SequenceSpec& xs, const Point& u, const SequenceSpec& ys,
                                 const Point& v, double s, double t,
                                 const FunctionalFamily& family, const TesterConfig& cfg) {
  const Space& space = xs.space();
  if (!space.supports_w_map()) {
    throw NotNormedSpaceError("linear combinations need a normed space, got " + space.name());
  }
  const Verdict vx = test_dweak(xs, u, family, cfg);
  if (vx.outcome != Outcome::Consistent) {
    throw PreconditionFailedError(std::string("x_n is ") + outcome_name(vx.outcome) +
                                  " at u: " + vx.reason);
  }
  const Verdict vy = test_strong(ys, v, cfg);
  if (vy.outcome != Outcome::Consistent) {
    throw PreconditionFailedError(std::string("y_n is ") + outcome_name(vy.outcome) +
                                  " at v under the strong test: " + vy.reason);
  }
  const SequenceSpec combined = combine(s, xs, t, ys);
  const Point target = combine_points(s, u, t, v);
  space.require_member(target, "s u + t v");
  return test_dweak(combined, target, family, cfg);
}

BallProbe ball_closedness_probe(const Space& space, const Point& q, double r,
                                const SequenceSpec& seq, const Point& z,
                                const FunctionalFamily& family, const TesterConfig& cfg) {
  space.require_member(q, "center");
  space.require_member(z, "candidate");
  const auto terms = seq.materialize(cfg.horizon);
  for (std::size_t n = 1; n <= terms.size(); ++n) {
    const double d = distance_unchecked(space, terms[n - 1], q);
    if (d > r + 1e-12) {
      throw PreconditionFailedError("term " + std::to_string(n) + " lies outside B(q, r)");
    }
  }
  const double dzq = distance(space, z, q);
  if (!(dzq > r)) throw PreconditionFailedError("candidate lies inside B(q, r)");

  const auto h = MetricFunctional::internal(space, q);
  const LiminfEstimate est = liminf_estimate(h, seq, cfg);
  BallProbe out;
  out.analytic_gap = dzq - r;
  Verdict& v = out.verdict;
  v.outcome = Outcome::Violation;
  v.candidate = z;
  v.witness = h;
  v.gap = h(z) - est.value;
  v.margin = -v.gap;
  v.witness_term = est.argmin;
  v.window = est.window;
  v.horizon = cfg.horizon;
  v.tol = cfg.tol;
  v.reason = "every term has h_q <= r - d(o,q) < h_q(z)";
  out.family_verdict = test_dweak(seq, z, family, cfg);
  return out;
}

bool DistanceBoundReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.holds; });
}

DistanceBoundReport liminf_distance_bound(const SequenceSpec& seq, const Point& z,
                                          const std::vector<Point>& probes,
                                          const FunctionalFamily& family,
                                          const TesterConfig& cfg) {
  const Space& space = seq.space();
  DistanceBoundReport out;
  out.precondition = test_dweak(seq, z, family, cfg).outcome;
  const Windows w = Windows::from(cfg);
  const auto terms = seq.materialize(cfg.horizon);
  for (const auto& p : probes) {
    space.require_member(p, "probe");
    DistanceBoundRow row;
    row.w = p;
    row.lhs = distance_unchecked(space, z, p);
    row.liminf = kInf;
    const auto s = excess_stats(w, [&](std::size_t n) {
      const double d = distance_unchecked(space, terms[n - 1], p);
      row.liminf = std::min(row.liminf, d);
      return row.lhs - d;
    });
    row.trend = classify_excess(s, cfg).trend;
    row.holds = settles(row.trend);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<ExploreRow> explore_unbounded(const Space& space, std::size_t count,
                                          std::uint64_t seed, const TesterConfig& cfg) {
  const auto* lp = space.as<LpSpace>();
  if (lp == nullptr) throw UnsupportedSpaceError("exploration runs in l_p, got " + space.name());
  const auto family = default_family(space);
  Rng rng(seed);
  std::vector<ExploreRow> rows;
  for (std::size_t i = 0; i < count; ++i) {
    std::ostringstream name;
    name.precision(4);
    std::optional<SequenceSpec> seq;
    const double g = rng.uniform(0.5, 3.0);
    switch (i % 3) {
      case 0:
        seq.emplace(space, CoordinateBlowup{0.0, g});
        name << g << " n e_n";
        break;
      case 1: {
        UserFormula f;
        f.terms.push_back({g, 1, false, Point{SparseVector::unit(1)}, 0});
        f.terms.push_back({1.0, 0, false, std::nullopt, 1});
        seq.emplace(space, std::move(f));
        name << g << " n e_1 + e_(n+1)";
        break;
      }
      default: {
        UserFormula f;
        f.terms.push_back({g, 1, true, std::nullopt, 0});
        seq.emplace(space, std::move(f));
        name << g << " (-1)^n n e_n";
        break;
      }
    }
    const Verdict v = test_dweak(*seq, space.basepoint(), family, cfg);
    rows.push_back({name.str(), v.outcome, v.witness ? v.witness->describe() : ""});
  }
  return rows;
}

}  // namespace dweak
