#include "dweak/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include "dweak/errors.hpp"
#include "dweak/oracle.hpp"
#include "parallel.hpp"

namespace dweak {

namespace {

constexpr double kReplayTol = 1e-12;

std::string num_text(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v + 0.0;
  return os.str();
}

std::string where(const std::string& at) { return at.empty() ? "/" : at; }

// Typed access to a JSON object whose key set was already validated.
class Fields {
 public:
  Fields(const Json& j, std::string at) : j_(j), at_(std::move(at)) {}

  std::string path(const std::string& key) const { return at_ + "/" + key; }
  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  const Json& raw(const char* key) const {
    if (!has(key)) throw ParseError(std::string("missing field '") + key + "'", 0, 0, where(at_));
    return j_.at(key);
  }

  double number(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number()) throw ParseError("expected a number", 0, 0, path(key));
    return v.get<double>();
  }
  double number_or(const char* key, double d) const { return has(key) ? number(key) : d; }

  std::uint64_t count(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_number_unsigned()) throw ParseError("expected a nonnegative integer", 0, 0, path(key));
    return v.get<std::uint64_t>();
  }
  std::uint64_t count_or(const char* key, std::uint64_t d) const { return has(key) ? count(key) : d; }

  bool flag(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_boolean()) throw ParseError("expected a boolean", 0, 0, path(key));
    return v.get<bool>();
  }

  std::string text(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_string()) throw ParseError("expected a string", 0, 0, path(key));
    return v.get<std::string>();
  }
  std::string text_or(const char* key, const std::string& d) const { return has(key) ? text(key) : d; }

  Point point(const char* key) const { return point_from_json(raw(key), path(key)); }

  std::vector<Point> points(const char* key) const {
    const Json& v = raw(key);
    if (!v.is_array()) throw ParseError("expected an array of points", 0, 0, path(key));
    std::vector<Point> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(point_from_json(v[i], path(key) + "/" + std::to_string(i)));
    }
    return out;
  }

  const Json& json() const { return j_; }
  const std::string& at() const { return at_; }

 private:
  const Json& j_;
  std::string at_;
};

void reject_unknown(const Json& j, const std::string& at, const std::vector<std::string>& allowed) {
  if (!j.is_object()) throw ParseError("expected an object", 0, 0, where(at));
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError("unknown field '" + key + "'", 0, 0, at + "/" + key);
    }
  }
}

// Collects failed expectations of one check.
struct Judge {
  Json failures = Json::array();
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool pass() const { return failures.empty(); }
};

struct Body {
  Json result = Json::object();
  std::string headline;
  Judge judge;
};

using Runner = std::function<Body()>;

struct Ctx {
  Scenario sc;
  std::vector<Point> grid;

  const Space& space() const { return *sc.space; }
  const SequenceSpec& seq() const { return *sc.sequence; }
};

struct Bind {
  std::shared_ptr<const Ctx> ctx;
  Fields params;
  Fields expect;

  const Ctx& c() const { return *ctx; }

  Point candidate() const {
    if (params.has("candidate")) return params.point("candidate");
    if (!c().sc.candidates.empty()) return c().sc.candidates.front();
    return c().space().basepoint();
  }

  FunctionalFamily family() const {
    FamilyBudget b = c().sc.family;
    if (params.has("family")) {
      const std::string at = params.path("family");
      reject_unknown(params.raw("family"), at,
                     {"max_members", "indices", "random_internals", "extra_anchors"});
      Fields f(params.raw("family"), at);
      b.max_members = f.count_or("max_members", b.max_members);
      b.indices = static_cast<Index>(f.count_or("indices", static_cast<std::uint64_t>(b.indices)));
      b.random_internals = f.count_or("random_internals", b.random_internals);
      if (f.has("extra_anchors")) b.extra_anchors = f.points("extra_anchors");
    }
    return default_family(c().space(), b);
  }

  const std::vector<Point>& grid() const {
    if (c().grid.empty()) throw ParseError("this check needs a non-empty grid", 0, 0, "/grid");
    return c().grid;
  }
};

using Binder = std::function<Runner(const Bind&)>;

struct Op {
  OpInfo info;
  bool needs_space = true;
  bool needs_sequence = true;
  Binder bind;
};

std::string verdict_headline(const Verdict& v) {
  std::string s = outcome_name(v.outcome);
  if (v.outcome == Outcome::Violation) {
    s += " gap=" + num_text(v.gap);
    if (v.witness) s += " by " + v.witness->describe();
    if (v.probe) s += " probe " + to_string(*v.probe);
  } else if (v.outcome == Outcome::Consistent) {
    s += " margin=" + num_text(v.margin);
  }
  return s;
}

void expect_outcome(const Fields& expect, const Verdict& v, Judge& j) {
  if (expect.has("outcome")) {
    const std::string want = expect.text("outcome");
    j.require(want == outcome_name(v.outcome),
              std::string("outcome ") + outcome_name(v.outcome) + ", expected " + want);
  }
}

void expect_flag(const Fields& expect, const char* key, bool actual, bool fallback, Judge& j) {
  const bool want = expect.has(key) ? expect.flag(key) : fallback;
  j.require(actual == want, std::string(key) + " is " + (actual ? "true" : "false"));
}

void expect_at_most(const Fields& expect, const char* key, double actual, double fallback,
                    Judge& j) {
  const double bound = expect.number_or(key, fallback);
  j.require(actual <= bound, std::string(key) + " " + num_text(actual) + " exceeds " + num_text(bound));
}

// ---------------------------------------------------------------------------
// Operations

Runner bind_dweak(const Bind& b) {
  auto ctx = b.ctx;
  const Point z = b.candidate();
  const auto family = b.family();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const Verdict v = test_dweak(ctx->seq(), z, family, ctx->sc.config);
    out.result = to_json(v);
    out.result["family_size"] = family.members.size();
    expect_outcome(expect, v, out.judge);
    if (expect.has("witness_kind")) {
      const std::string want = expect.text("witness_kind");
      const std::string got = v.witness ? to_json(*v.witness)["kind"].get<std::string>() : "none";
      out.judge.require(got == want, "witness kind " + got + ", expected " + want);
    }
    if (v.outcome == Outcome::Violation && v.witness) {
      const double gap = replay_certificate(ctx->space(), ctx->seq(), out.result, ctx->sc.config);
      const double residual = std::abs(gap - v.gap);
      out.result["replay"] = {{"gap", gap}, {"residual", residual}};
      out.judge.require(residual <= kReplayTol, "certificate replay residual " + num_text(residual));
    }
    out.headline = verdict_headline(v);
    return out;
  };
}

Runner bind_delta(const Bind& b) {
  auto ctx = b.ctx;
  const Point z = b.candidate();
  const auto probes = b.params.has("probes") ? b.params.points("probes")
                                             : default_delta_probes(b.family(), ctx->grid);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const Verdict v = test_delta(ctx->seq(), z, probes, ctx->sc.config);
    out.result = to_json(v);
    out.result["probes"] = probes.size();
    expect_outcome(expect, v, out.judge);
    out.headline = verdict_headline(v) + " over " + std::to_string(probes.size()) + " probes";
    return out;
  };
}

Runner bind_strong(const Bind& b) {
  auto ctx = b.ctx;
  const Point z = b.candidate();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const Verdict v = test_strong(ctx->seq(), z, ctx->sc.config);
    out.result = to_json(v);
    expect_outcome(expect, v, out.judge);
    out.headline = verdict_headline(v);
    return out;
  };
}

Runner bind_lambda(const Bind& b) {
  auto ctx = b.ctx;
  const auto family = b.family();
  const auto grid = b.grid();
  std::optional<std::pair<Point, std::pair<double, double>>> boundary;
  if (b.params.has("boundary")) {
    const std::string at = b.params.path("boundary");
    reject_unknown(b.params.raw("boundary"), at, {"direction", "lo", "hi"});
    Fields f(b.params.raw("boundary"), at);
    boundary = {f.point("direction"), {f.number_or("lo", 0.0), f.number("hi")}};
  }
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const LambdaEstimate est = lambda_set(ctx->seq(), family, grid, ctx->sc.config);
    out.result = to_json(est);
    out.result["family_size"] = family.members.size();
    std::size_t members = 0;
    for (std::size_t i = 0; i < est.grid.size(); ++i) members += est.member(i) ? 1 : 0;
    out.headline = std::to_string(members) + "/" + std::to_string(grid.size()) + " members";
    if (est.descriptor) {
      expect_flag(expect, "agrees", est.agrees(), true, out.judge);
      out.headline += ", " + std::to_string(est.disagreements) + " disagreements with " +
                      (est.descriptor->formula.empty() ? "descriptor" : est.descriptor->formula);
    } else if (expect.has("agrees")) {
      out.judge.require(false, "no closed-form region to compare with");
    }
    if (expect.has("members")) {
      out.judge.require(members == expect.count("members"),
                        std::to_string(members) + " members, expected " +
                            std::to_string(expect.count("members")));
    }
    if (boundary) {
      const auto* dir = std::get_if<SparseVector>(&boundary->first);
      if (dir == nullptr) throw InvalidArgumentError("boundary direction must be a sparse vector");
      const double tested =
          boundary_radius(*est.traces, *dir, boundary->second.first, boundary->second.second);
      Json bj{{"direction", to_json(boundary->first)}, {"tested", tested}};
      if (est.descriptor && est.descriptor->kind == RegionKind::NormBall) {
        bj["closed_form"] = est.descriptor->radius;
      }
      out.result["boundary"] = bj;
      out.headline += ", boundary " + num_text(tested);
      if (expect.has("radius")) {
        const double want = expect.number("radius");
        const double tol = expect.number_or("radius_tol", 1e-6);
        out.judge.require(std::abs(tested - want) <= tol,
                          "tested radius " + num_text(tested) + " off by more than " + num_text(tol));
        if (bj.contains("closed_form")) {
          const double closed = bj["closed_form"].get<double>();
          const double ctol = expect.number_or("closed_form_tol", 1e-9);
          out.judge.require(std::abs(closed - want) <= ctol,
                            "closed-form radius " + num_text(closed) + " off by more than " +
                                num_text(ctol));
        }
      }
    }
    return out;
  };
}

Runner bind_lambda_convexity(const Bind& b) {
  auto ctx = b.ctx;
  const auto family = b.family();
  const auto grid = b.grid();
  const std::size_t samples = b.params.count_or("samples", 200);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const LambdaEstimate est = lambda_set(ctx->seq(), family, grid, ctx->sc.config);
    const ConvexityReport r = check_lambda_convex_closed(est, samples, ctx->sc.seed);
    out.result = {{"pairs", r.pairs},
                  {"boundary_checks", r.boundary_checks},
                  {"seed", r.seed},
                  {"counterexamples", r.counterexamples},
                  {"ok", r.ok()}};
    expect_flag(expect, "ok", r.ok(), true, out.judge);
    out.headline = std::to_string(r.pairs) + " pairs, " + std::to_string(r.boundary_checks) +
                   " boundary points, " + std::to_string(r.counterexamples.size()) +
                   " counterexamples";
    return out;
  };
}

Runner bind_internal_values(const Bind& b) {
  auto ctx = b.ctx;
  std::vector<Point> anchors;
  if (b.params.has("anchors")) {
    anchors = b.params.points("anchors");
  } else {
    for (const auto& h : b.family().members) {
      if (auto a = h.internal_anchor()) anchors.push_back(*a);
    }
  }
  const std::uint64_t count = b.params.count_or("count", 200);
  const double value = b.expect.number("value");
  const double tol = b.expect.number_or("tol", 1e-9);
  return [=] {
    Body out;
    const Space& space = ctx->space();
    double worst = 0.0;
    for (const auto& w : anchors) {
      const auto* v = std::get_if<SparseVector>(&w);
      if (v == nullptr) throw InvalidArgumentError("anchors must be sparse vectors");
      const auto h = MetricFunctional::internal(space, w);
      const auto from = static_cast<std::uint64_t>(v->max_index()) + 1;
      for (std::uint64_t n = from; n < from + count; ++n) {
        worst = std::max(worst, std::abs(eval(h, ctx->seq().at(n)) - value));
      }
    }
    out.result = {{"anchors", anchors.size()}, {"terms_per_anchor", count},
                  {"value", value},            {"max_deviation", worst}};
    out.judge.require(worst <= tol, "max deviation " + num_text(worst) + " exceeds " + num_text(tol));
    out.headline = "max |h_w(x_n) - " + num_text(value) + "| = " + num_text(worst) + " over " +
                   std::to_string(anchors.size()) + " anchors";
    return out;
  };
}

Runner bind_gliding_hump(const Bind& b) {
  auto ctx = b.ctx;
  const double eps = b.params.number("eps");
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const GlidingHump g = gliding_hump(ctx->seq(), eps, ctx->sc.config);
    out.result = to_json(g);
    double recheck = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < g.indices.size(); ++p) {
      const auto x = std::get<SparseVector>(ctx->seq().at(g.indices[p]));
      double sum = 0.0;
      for (const auto& [m, s] : g.signs) sum += s * x.at(m);
      if (p >= 2) recheck = std::min(recheck, std::abs(sum));
    }
    out.result["direct_min"] = recheck;
    expect_flag(expect, "certified", g.certified && recheck >= eps / 4, true, out.judge);
    out.headline = std::to_string(g.indices.size()) + " blocks, min " + num_text(recheck) +
                   " vs eps/4 = " + num_text(eps / 4);
    return out;
  };
}

Runner bind_busemann_cross(const Bind& b) {
  const double p = b.params.number("p");
  const std::uint64_t trials = b.params.count_or("trials", 100);
  const std::uint64_t seed = b.c().sc.seed;
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const CrossValidation cv = busemann_cross_validate(p, trials, seed);
    out.result = {{"p", p},
                  {"trials", cv.trials},
                  {"seed", cv.seed},
                  {"max_residual", cv.max_residual},
                  {"worst_u", to_json(Point{cv.worst_u})},
                  {"worst_x", to_json(Point{cv.worst_x})}};
    expect_at_most(expect, "max_residual", cv.max_residual, 1e-6, out.judge);
    out.headline = "p=" + num_text(p) + " max residual " + num_text(cv.max_residual);
    return out;
  };
}

Runner bind_busemann_norm(const Bind& b) {
  auto ctx = b.ctx;
  const Point v = b.params.point("v");
  const std::uint64_t directions = b.params.count_or("directions", 64);
  const double tol = b.expect.number_or("tol", 1e-9);
  return [=] {
    Body out;
    const Space& space = ctx->space();
    const double nv = norm(space, v);
    if (!(nv > 0.0)) throw InvalidArgumentError("v must be nonzero");
    const Point u = linear_combination(space, 1.0 / nv, v, 0.0, v);
    const Point minus_u = linear_combination(space, -1.0 / nv, v, 0.0, v);
    const double toward = busemann_numeric(space, minus_u, v).value;
    const double away = busemann_numeric(space, u, v).value;
    const NormSup sup = norm_via_busemann(space, v, directions, ctx->sc.seed);
    out.result = {{"norm", nv},
                  {"h_minus_direction", toward},
                  {"h_direction", away},
                  {"sup", sup.sup_value},
                  {"max_sampled", sup.max_sampled},
                  {"directions", sup.directions}};
    out.judge.require(std::abs(toward - nv) <= tol, "h^{-v/|v|}(v) off by " + num_text(toward - nv));
    out.judge.require(std::abs(away + nv) <= tol, "h^{v/|v|}(v) off by " + num_text(away + nv));
    out.judge.require(std::abs(sup.sup_value - nv) <= tol, "sup off by " + num_text(sup.sup_value - nv));
    out.judge.require(sup.max_sampled <= nv + tol, "a sampled direction exceeds the norm");
    out.headline = "|v| = " + num_text(nv) + ", h^{-u}(v) = " + num_text(toward) +
                   ", h^{u}(v) = " + num_text(away);
    return out;
  };
}

Runner bind_separation(const Bind& b) {
  auto ctx = b.ctx;
  const Point x = b.params.point("x");
  const Point y = b.params.point("y");
  const double tol = b.expect.number_or("tol", 1e-7);
  return [=] {
    Body out;
    const Space& space = ctx->space();
    const Separation s = separating_busemann(space, x, y);
    const double d = distance(space, x, y);
    const double residual = std::abs(eval(s.h, x) - (eval(s.h, y) - d));
    out.result = {{"functional", to_json(s.h)}, {"gap", s.gap}, {"distance", d}, {"residual", residual}};
    out.judge.require(residual <= tol, "separation residual " + num_text(residual));
    out.judge.require(s.gap > 0.0, "functional does not separate");
    out.headline = "h(y) - h(x) = " + num_text(s.gap) + ", d(x, y) = " + num_text(d);
    return out;
  };
}

Runner bind_properties(const Bind& b) {
  auto ctx = b.ctx;
  const MetricFunctional h =
      functional_from_json(ctx->space(), b.params.raw("functional"), b.params.path("functional"));
  const std::uint64_t samples = b.params.count_or("samples", 200);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const PropertyReport r = check_properties(h, samples, ctx->sc.seed);
    out.result = to_json(r);
    out.result["functional"] = to_json(h);
    expect_flag(expect, "ok", r.ok(), true, out.judge);
    out.headline = h.describe() + ": Lipschitz ratio " + num_text(r.max_lipschitz_ratio);
    return out;
  };
}

Runner bind_discrete(const Bind& b) {
  auto ctx = b.ctx;
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const DiscreteClassification c = discrete_classify(ctx->seq(), ctx->sc.config);
    out.result = to_json(c);
    if (expect.has("case")) {
      const std::string want = expect.text("case");
      out.judge.require(want == discrete_case_name(c.kind),
                        std::string("case ") + discrete_case_name(c.kind) + ", expected " + want);
    }
    if (expect.has("lambda")) {
      out.judge.require(expect.text("lambda") == c.lambda, "limit set " + c.lambda);
    }
    out.judge.require(c.disagreements == 0,
                      std::to_string(c.disagreements) + " verdicts disagree with the case");
    out.headline = std::string(discrete_case_name(c.kind)) + ", limit set " + c.lambda;
    return out;
  };
}

Runner bind_compactification(const Bind& b) {
  auto ctx = b.ctx;
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const CompactificationTable t = finite_compactification(ctx->space());
    out.result = to_json(t);
    expect_flag(expect, "max_row_matches", t.max_row_matches, true, out.judge);
    expect_flag(expect, "lipschitz_exact", t.lipschitz_exact, true, out.judge);
    expect_flag(expect, "vanish_at_basepoint", t.vanish_at_basepoint, true, out.judge);
    if (expect.has("rows_distinct")) {
      expect_flag(expect, "rows_distinct", t.rows_distinct, true, out.judge);
    }
    out.headline = std::to_string(t.rows.size()) + " internals, max row " +
                   (t.max_row_matches ? "matches" : "differs");
    return out;
  };
}

Runner bind_brute_force(const Bind& b) {
  auto ctx = b.ctx;
  std::vector<Point> candidates;
  if (b.params.has("candidates")) {
    candidates = b.params.points("candidates");
  } else if (const auto* f = ctx->space().as<FiniteMetricSpace>()) {
    for (std::uint64_t i = 0; i < f->n; ++i) candidates.push_back(Atom{i});
  }
  const auto family = b.family();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const FamilyTraces traces(family, ctx->seq(), ctx->sc.config);
    Json rows = Json::array();
    std::size_t disagreements = 0;
    for (const auto& z : candidates) {
      const Verdict exact = brute_force_dweak(ctx->space(), ctx->seq(), z);
      const Verdict tested = traces.test(z);
      const bool same = exact.outcome == tested.outcome;
      disagreements += same ? 0 : 1;
      rows.push_back({{"z", to_json(z)},
                      {"exact", outcome_name(exact.outcome)},
                      {"tested", outcome_name(tested.outcome)}});
    }
    out.result = {{"candidates", rows}, {"disagreements", disagreements}};
    expect_flag(expect, "agree", disagreements == 0, true, out.judge);
    out.headline = std::to_string(candidates.size()) + " candidates, " +
                   std::to_string(disagreements) + " disagreements";
    return out;
  };
}

IndexSchedule schedule_from(const Fields& params) {
  IndexSchedule s;
  if (!params.has("schedule")) return s;
  const std::string at = params.path("schedule");
  reject_unknown(params.raw("schedule"), at, {"kind", "count"});
  Fields f(params.raw("schedule"), at);
  const std::string kind = f.text_or("kind", "geometric");
  if (kind == "geometric") {
    s.kind = IndexSchedule::Kind::Geometric;
  } else if (kind == "linear") {
    s.kind = IndexSchedule::Kind::Linear;
  } else {
    throw ParseError("schedule kind is geometric or linear", 0, 0, f.path("kind"));
  }
  s.count = f.count_or("count", s.count);
  return s;
}

Runner bind_diagonal(const Bind& b) {
  auto ctx = b.ctx;
  const auto grid = b.grid();
  const MetricFunctional limit =
      functional_from_json(ctx->space(), b.params.raw("limit"), b.params.path("limit"));
  const double tol = b.params.number_or("tol", 1e-7);
  const IndexSchedule schedule = schedule_from(b.params);
  const double bound = b.expect.number_or("max_error", 1e-6);
  return [=] {
    Body out;
    const DiagonalResult d = diagonal_subsequence(ctx->seq(), grid, tol, schedule);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(d.limits[k] - eval(limit, grid[k])));
    }
    out.result = to_json(d);
    out.result["limit"] = to_json(limit);
    out.result["max_error"] = worst;
    out.judge.require(worst <= bound, "max error " + num_text(worst) + " exceeds " + num_text(bound));
    out.headline = std::to_string(d.indices.size()) + " indices kept, max |limit - " +
                   limit.describe() + "| = " + num_text(worst);
    return out;
  };
}

Runner bind_snowflake(const Bind& b) {
  auto ctx = b.ctx;
  const auto grid = b.grid();
  const double tol = b.params.number_or("tol", 1e-7);
  const IndexSchedule schedule = schedule_from(b.params);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const SnowflakeLimit s = snowflake_limit_check(ctx->seq(), grid, tol, schedule);
    out.result = to_json(s.table);
    out.result["zero_residual"] = s.zero_residual;
    out.result["escapes"] = s.escapes;
    expect_at_most(expect, "zero_residual", s.zero_residual, 1e-6, out.judge);
    expect_flag(expect, "escapes", s.escapes, true, out.judge);
    out.headline = "max |limit| = " + num_text(s.zero_residual);
    return out;
  };
}

Runner bind_uniform_convexity(const Bind& b) {
  auto ctx = b.ctx;
  const Point xhat = b.params.point("xhat");
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const UniformConvexityReport r =
        uniform_convex_strong_check(ctx->seq(), xhat, ctx->sc.config, ctx->sc.seed);
    out.result = to_json(r);
    if (expect.has("branch")) {
      const std::string want = expect.text("branch");
      out.judge.require(want == branch_name(r.branch),
                        std::string("branch ") + branch_name(r.branch) + ", expected " + want);
    }
    out.headline = std::string(branch_name(r.branch)) +
                   (r.witness ? " by " + r.witness->describe() + " gap=" + num_text(r.gap) : "");
    return out;
  };
}

Runner bind_ball_closedness(const Bind& b) {
  auto ctx = b.ctx;
  const Point q = b.params.point("q");
  const double r = b.params.number("r");
  const Point z = b.candidate();
  const auto family = b.family();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const BallProbe p = ball_closedness_probe(ctx->space(), q, r, ctx->seq(), z, family, ctx->sc.config);
    out.result = {{"analytic_gap", p.analytic_gap},
                  {"certificate", to_json(p.verdict)},
                  {"family", to_json(p.family_verdict)}};
    expect_outcome(expect, p.verdict, out.judge);
    expect_outcome(expect, p.family_verdict, out.judge);
    out.headline = verdict_headline(p.verdict) + ", d(z, q) - r = " + num_text(p.analytic_gap);
    return out;
  };
}

Runner bind_linear_combination(const Bind& b) {
  auto ctx = b.ctx;
  const SequenceSpec ys =
      sequence_from_json(ctx->space(), b.params.raw("y_sequence"), b.params.path("y_sequence"));
  const Point u = b.params.point("u");
  const Point v = b.params.point("v");
  const double s = b.params.number_or("s", 1.0);
  const double t = b.params.number_or("t", 1.0);
  const auto family = b.family();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const Verdict verdict = linear_combination_check(ctx->seq(), u, ys, v, s, t, family, ctx->sc.config);
    out.result = to_json(verdict);
    expect_outcome(expect, verdict, out.judge);
    out.headline = verdict_headline(verdict);
    return out;
  };
}

Runner bind_distance_bound(const Bind& b) {
  auto ctx = b.ctx;
  const Point z = b.candidate();
  const auto family = b.family();
  const auto probes =
      b.params.has("probes") ? b.params.points("probes") : default_delta_probes(family, ctx->grid);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const DistanceBoundReport r = liminf_distance_bound(ctx->seq(), z, probes, family, ctx->sc.config);
    out.result = to_json(r);
    expect_flag(expect, "all_hold", r.all_hold(), true, out.judge);
    out.headline = std::string("precondition ") + outcome_name(r.precondition) + ", " +
                   std::to_string(r.rows.size()) + " probes";
    return out;
  };
}

Runner bind_hull(const Bind& b) {
  auto ctx = b.ctx;
  std::vector<std::uint64_t> members;
  for (const auto& p : b.params.points("members")) {
    const auto* a = std::get_if<Atom>(&p);
    if (a == nullptr) throw ParseError("hull members are atoms", 0, 0, b.params.path("members"));
    members.push_back(a->id);
  }
  std::optional<std::vector<std::uint64_t>> want;
  if (b.expect.has("hull")) {
    want.emplace();
    for (const auto& p : b.expect.points("hull")) {
      const auto* a = std::get_if<Atom>(&p);
      if (a == nullptr) throw ParseError("hull entries are atoms", 0, 0, b.expect.path("hull"));
      want->push_back(a->id);
    }
    std::sort(want->begin(), want->end());
  }
  return [=] {
    Body out;
    const auto h = hull(ctx->space(), members);
    Json atoms = Json::array();
    for (auto id : h) atoms.push_back(Json{{"atom", id}});
    out.result = {{"hull", atoms}};
    if (want) out.judge.require(*want == h, "hull differs from the expected set");
    out.headline = std::to_string(h.size()) + " points";
    return out;
  };
}

Runner bind_validate(const Bind& b) {
  auto ctx = b.ctx;
  const std::uint64_t samples = b.params.count_or("samples", 200);
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const ValidationReport r = validate_space(ctx->space(), ctx->sc.seed, samples);
    out.result = to_json(r);
    expect_flag(expect, "ok", r.ok(), true, out.judge);
    out.headline = std::to_string(r.checks) + " checks, " + std::to_string(r.violations.size()) +
                   " violations";
    return out;
  };
}

Runner bind_basepoint(const Bind& b) {
  auto ctx = b.ctx;
  const Point z = b.candidate();
  const Point base = b.params.point("base");
  const auto family = b.family();
  const Fields expect = b.expect;
  return [=] {
    Body out;
    const Verdict v0 = test_dweak(ctx->seq(), z, family, ctx->sc.config);
    const Verdict v1 = test_dweak(ctx->seq(), z, rebase_family(family, base), ctx->sc.config);
    out.result = {{"original", outcome_name(v0.outcome)}, {"rebased", outcome_name(v1.outcome)}};
    expect_flag(expect, "same", v0.outcome == v1.outcome, true, out.judge);
    expect_outcome(expect, v0, out.judge);
    out.headline = std::string(outcome_name(v0.outcome)) + " before and " + outcome_name(v1.outcome) +
                   " after rebasing";
    return out;
  };
}

Runner bind_explore(const Bind& b) {
  auto ctx = b.ctx;
  const std::uint64_t count = b.params.count_or("count", 8);
  return [=] {
    Body out;
    const auto rows = explore_unbounded(ctx->space(), count, ctx->sc.seed, ctx->sc.config);
    Json arr = Json::array();
    std::size_t consistent = 0;
    for (const auto& r : rows) {
      consistent += r.outcome == Outcome::Consistent ? 1 : 0;
      arr.push_back({{"sequence", r.sequence}, {"outcome", outcome_name(r.outcome)}, {"witness", r.witness}});
    }
    out.result = {{"exploratory", true}, {"rows", arr}};
    out.headline = "exploratory: " + std::to_string(consistent) + "/" + std::to_string(rows.size()) +
                   " unbounded sequences look consistent at 0 against this family";
    return out;
  };
}

const std::vector<Op>& registry() {
  static const std::vector<Op> ops = [] {
    std::vector<Op> v;
    auto add = [&](std::string name, std::string summary, std::vector<std::string> params,
                   std::vector<std::string> expect, Binder bind, bool needs_sequence = true,
                   bool needs_space = true) {
      expect.push_back("error");
      v.push_back({{std::move(name), std::move(summary), std::move(params), std::move(expect)},
                   needs_space,
                   needs_sequence,
                   std::move(bind)});
    };
    add("validate_space", "metric axioms, exhaustive or sampled", {"samples"}, {"ok"}, bind_validate,
        false);
    add("dweak", "d-weak test of the sequence at a candidate, with certificate replay",
        {"candidate", "family"}, {"outcome", "witness_kind"}, bind_dweak);
    add("delta", "Delta test at a candidate against probe points", {"candidate", "probes", "family"},
        {"outcome"}, bind_delta);
    add("strong", "strong convergence to a candidate", {"candidate"}, {"outcome"}, bind_strong);
    add("lambda_set", "limit set on the grid, compared with the closed form when one is known",
        {"family", "boundary"}, {"agrees", "members", "radius", "radius_tol", "closed_form_tol"},
        bind_lambda);
    add("lambda_convexity", "W-convexity and boundary membership of the estimated limit set",
        {"family", "samples"}, {"ok"}, bind_lambda_convexity);
    add("internal_values", "internal values along the sequence past each anchor's support",
        {"anchors", "count", "family"}, {"value", "tol"}, bind_internal_values);
    add("gliding_hump", "block sign pattern on an l_1 sequence, re-verified by summation", {"eps"},
        {"certified"}, bind_gliding_hump);
    add("busemann_cross", "closed-form against numeric Busemann values", {"p", "trials"},
        {"max_residual"}, bind_busemann_cross, false, false);
    add("busemann_norm", "Busemann values at v along +-v/|v| and the sup over directions",
        {"v", "directions"}, {"tol"}, bind_busemann_norm, false);
    add("separation", "separating Busemann functional for two points", {"x", "y"}, {"tol"},
        bind_separation, false);
    add("properties", "Lipschitz, convexity, subadditivity and homogeneity of a functional",
        {"functional", "samples"}, {"ok"}, bind_properties, false);
    add("discrete_classify", "four-case classification of a sequence of atoms", {},
        {"case", "lambda"}, bind_discrete);
    add("compactification", "every internal of a finite space and the max-row identity", {},
        {"max_row_matches", "lipschitz_exact", "vanish_at_basepoint", "rows_distinct"},
        bind_compactification, false);
    add("brute_force", "exact oracle against the tester on a finite space",
        {"candidates", "family"}, {"agree"}, bind_brute_force);
    add("diagonal", "diagonal subsequence of internals and its pointwise limit",
        {"limit", "tol", "schedule"}, {"max_error"}, bind_diagonal);
    add("snowflake_limit", "diagonal limit of an escaping snowflake sequence", {"tol", "schedule"},
        {"zero_residual", "escapes"}, bind_snowflake);
    add("uniform_convexity", "internal violation or strong convergence in l_2",
        {"xhat"}, {"branch"}, bind_uniform_convexity);
    add("ball_closedness", "a limit outside a closed ball holding the sequence",
        {"q", "r", "candidate", "family"}, {"outcome"}, bind_ball_closedness);
    add("linear_combination", "limit of s x_n + t y_n at s u + t v",
        {"y_sequence", "u", "v", "s", "t", "family"}, {"outcome"}, bind_linear_combination);
    add("distance_bound", "d(z, w) <= liminf d(x_n, w) at a d-weak limit",
        {"candidate", "probes", "family"}, {"all_hold"}, bind_distance_bound);
    add("hull", "intersection of the closed balls containing a set", {"members"}, {"hull"},
        bind_hull, false);
    add("basepoint_invariance", "verdict unchanged when the family is rebased",
        {"candidate", "base", "family"}, {"same", "outcome"}, bind_basepoint);
    add("explore_unbounded", "exploratory search over unbounded sequences at 0", {"count"}, {},
        bind_explore, false);
    return v;
  }();
  return ops;
}

const Op& find_op(const std::string& name, const std::string& at) {
  for (const auto& op : registry()) {
    if (op.info.name == name) return op;
  }
  throw ParseError("unknown check op '" + name + "'", 0, 0, at);
}

Json budget_json(const FamilyBudget& b) {
  Json extra = Json::array();
  for (const auto& p : b.extra_anchors) extra.push_back(to_json(p));
  return Json{{"max_members", b.max_members},
              {"indices", b.indices},
              {"random_internals", b.random_internals},
              {"extra_anchors", extra}};
}

std::string error_text(const std::exception& e) {
  if (const auto* d = dynamic_cast<const Error*>(&e)) {
    return std::string(error_code_name(d->code())) + ": " + e.what();
  }
  return std::string(error_code_name(ErrorCode::Execution)) + ": " + e.what();
}

bool filtered_out(const Overrides& o, const Scenario& s, const CheckSpec& c) {
  if (!o.filter) return false;
  return *o.filter != c.id && *o.filter != s.name + "/" + c.id;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<Point> expand_grid(const Json& grid, const std::string& at) {
  std::vector<Point> out;
  if (grid.is_null()) return out;
  reject_unknown(grid, at, {"points", "polar"});
  Fields f(grid, at);
  if (f.has("points")) out = f.points("points");
  if (f.has("polar")) {
    const std::string pat = f.path("polar");
    reject_unknown(f.raw("polar"), pat, {"coords", "degrees", "radii", "p"});
    Fields g(f.raw("polar"), pat);
    Index i = 1, j = 2;
    if (g.has("coords")) {
      const Json& c = g.raw("coords");
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() || !c[1].is_number_unsigned() ||
          c[0].get<Index>() < 1 || c[1].get<Index>() < 1 || c[0] == c[1]) {
        throw ParseError("coords are two distinct indices >= 1", 0, 0, g.path("coords"));
      }
      i = c[0].get<Index>();
      j = c[1].get<Index>();
    }
    const double p = g.number_or("p", 2.0);
    auto numbers = [&](const char* key) {
      const Json& a = g.raw(key);
      if (!a.is_array()) throw ParseError("expected an array of numbers", 0, 0, g.path(key));
      std::vector<double> v;
      for (const auto& x : a) {
        if (!x.is_number()) throw ParseError("expected a number", 0, 0, g.path(key));
        v.push_back(x.get<double>());
      }
      return v;
    };
    const auto degrees = numbers("degrees");
    const auto radii = numbers("radii");
    for (double deg : degrees) {
      const double th = deg * std::numbers::pi / 180.0;
      double c = std::cos(th), s = std::sin(th);
      // Exact zeros on the axes keep grid points on the family's directions.
      if (std::fmod(deg, 90.0) == 0.0) {
        const int q = static_cast<int>(std::lround(deg / 90.0)) & 3;
        c = (q == 0) ? 1.0 : (q == 2 ? -1.0 : 0.0);
        s = (q == 1) ? 1.0 : (q == 3 ? -1.0 : 0.0);
      }
      const double n = std::pow(std::pow(std::abs(c), p) + std::pow(std::abs(s), p), 1.0 / p);
      for (double r : radii) {
        out.push_back(SparseVector::from_entries({{i, r * c / n}, {j, r * s / n}}));
      }
    }
  }
  return out;
}

Scenario scenario_from_json(const Json& j) {
  reject_unknown(j, "", {"name", "topic", "description", "space", "sequence", "candidates", "grid",
                         "family", "horizon", "burn_in", "tol", "seed", "checks"});
  Fields f(j, "");
  Scenario s;
  s.name = f.text("name");
  s.topic = f.text_or("topic", s.name);
  s.description = f.text_or("description", "");
  if (f.has("space")) s.space = space_from_json(f.raw("space"), "/space");
  if (f.has("sequence")) {
    if (!s.space) throw ParseError("a sequence needs a space", 0, 0, "/sequence");
    s.sequence = sequence_from_json(*s.space, f.raw("sequence"), "/sequence");
  }
  if (f.has("candidates")) s.candidates = f.points("candidates");
  if (f.has("grid")) {
    s.grid = f.raw("grid");
    expand_grid(s.grid);
  }
  if (f.has("family")) {
    reject_unknown(f.raw("family"), "/family",
                   {"max_members", "indices", "random_internals", "extra_anchors"});
    Fields b(f.raw("family"), "/family");
    s.family.max_members = b.count_or("max_members", s.family.max_members);
    s.family.indices =
        static_cast<Index>(b.count_or("indices", static_cast<std::uint64_t>(s.family.indices)));
    s.family.random_internals = b.count_or("random_internals", s.family.random_internals);
    if (b.has("extra_anchors")) s.family.extra_anchors = b.points("extra_anchors");
  }
  s.config.horizon = f.count_or("horizon", s.config.horizon);
  if (f.has("burn_in")) s.config.burn_in = f.count("burn_in");
  s.config.tol = f.number_or("tol", s.config.tol);
  if (!(s.config.tol > 0.0)) throw ParseError("tol must be positive", 0, 0, "/tol");
  if (s.config.horizon < 2 || s.config.effective_burn_in() >= s.config.horizon) {
    throw ParseError("need 1 <= burn_in < horizon", 0, 0, "/horizon");
  }
  s.seed = f.count_or("seed", 0);
  s.family.seed = s.seed;

  const Json& checks = f.has("checks") ? f.raw("checks") : Json::array();
  if (!checks.is_array()) throw ParseError("expected an array", 0, 0, "/checks");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string at = "/checks/" + std::to_string(i);
    reject_unknown(checks[i], at, {"id", "op", "params", "expect"});
    Fields c(checks[i], at);
    CheckSpec spec;
    spec.op = c.text("op");
    spec.id = c.text_or("id", spec.op);
    if (!ids.insert(spec.id).second) throw ParseError("duplicate check id '" + spec.id + "'", 0, 0, at + "/id");
    const Op& op = find_op(spec.op, at + "/op");
    if (c.has("params")) spec.params = c.raw("params");
    if (c.has("expect")) spec.expect = c.raw("expect");
    reject_unknown(spec.params, at + "/params",
                   std::vector<std::string>(op.info.params.begin(), op.info.params.end()));
    reject_unknown(spec.expect, at + "/expect",
                   std::vector<std::string>(op.info.expect.begin(), op.info.expect.end()));
    if (op.needs_space && !s.space) throw ParseError("op '" + spec.op + "' needs a space", 0, 0, at);
    if (op.needs_sequence && !s.sequence) {
      throw ParseError("op '" + spec.op + "' needs a sequence", 0, 0, at);
    }
    s.checks.push_back(std::move(spec));
  }
  return s;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  const Json j = parse_json_text(text, source);
  try {
    return scenario_from_json(j);
  } catch (const ParseError& e) {
    if (source.empty()) throw;
    throw ParseError(source + ": " + e.what(), e.line(), e.column(), e.path());
  }
}

Json to_json(const Scenario& s) {
  Json j{{"name", s.name}, {"topic", s.topic}};
  if (!s.description.empty()) j["description"] = s.description;
  if (s.space) j["space"] = to_json(*s.space);
  if (s.sequence) j["sequence"] = to_json(*s.sequence);
  if (!s.candidates.empty()) {
    Json c = Json::array();
    for (const auto& p : s.candidates) c.push_back(to_json(p));
    j["candidates"] = c;
  }
  if (!s.grid.is_null()) j["grid"] = s.grid;
  j["family"] = budget_json(s.family);
  j["horizon"] = s.config.horizon;
  if (s.config.burn_in) j["burn_in"] = *s.config.burn_in;
  j["tol"] = s.config.tol;
  j["seed"] = s.seed;
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    checks.push_back({{"id", c.id}, {"op", c.op}, {"params", c.params}, {"expect", c.expect}});
  }
  j["checks"] = checks;
  return j;
}

const std::vector<OpInfo>& list_checks() {
  static const std::vector<OpInfo> infos = [] {
    std::vector<OpInfo> v;
    for (const auto& op : registry()) v.push_back(op.info);
    return v;
  }();
  return infos;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "?";
}

double replay_certificate(const Space& space, const SequenceSpec& seq, const Json& verdict,
                          const TesterConfig& cfg) {
  if (!verdict.contains("witness")) throw InvalidArgumentError("verdict carries no functional");
  const MetricFunctional h = functional_from_json(space, verdict.at("witness"), "/witness");
  const Point z = point_from_json(verdict.at("candidate"), "/candidate");
  const LiminfEstimate e = liminf_estimate(h, seq, cfg);
  return eval(h, z) - e.value;
}

Report run_scenario(const Scenario& scenario, const Overrides& overrides) {
  auto ctx = std::make_shared<Ctx>();
  ctx->sc = scenario;
  if (overrides.seed) ctx->sc.seed = *overrides.seed;
  ctx->sc.family.seed = ctx->sc.seed;
  if (overrides.horizon) {
    ctx->sc.config.horizon = *overrides.horizon;
    if (ctx->sc.config.burn_in && *ctx->sc.config.burn_in >= *overrides.horizon) {
      ctx->sc.config.burn_in.reset();
    }
  }
  if (overrides.tol) ctx->sc.config.tol = *overrides.tol;
  ctx->sc.config.threads = overrides.threads;
  ctx->grid = expand_grid(ctx->sc.grid);
  std::shared_ptr<const Ctx> cctx = ctx;

  // Binding parses parameters and builds families; it runs in declaration
  // order so that malformed parameters surface as ParseError before any work.
  struct Bound {
    const CheckSpec* spec;
    std::optional<std::string> expected_error;
    Runner run;
    std::string bind_error;
  };
  std::vector<Bound> bound;
  for (std::size_t i = 0; i < scenario.checks.size(); ++i) {
    const CheckSpec& c = scenario.checks[i];
    if (filtered_out(overrides, scenario, c)) continue;
    const std::string at = "/checks/" + std::to_string(i);
    Bound b{&c, std::nullopt, nullptr, {}};
    Fields expect(c.expect, at + "/expect");
    if (expect.has("error")) b.expected_error = expect.text("error");
    try {
      b.run = find_op(c.op, at + "/op").bind(Bind{cctx, Fields(c.params, at + "/params"), expect});
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      b.bind_error = error_text(e);
    }
    bound.push_back(std::move(b));
  }

  Report report;
  report.checks.resize(bound.size());
  detail::parallel_for(bound.size(), overrides.threads, [&](std::size_t i) {
    const Bound& b = bound[i];
    CheckResult& r = report.checks[i];
    r.scenario = scenario.name;
    r.topic = scenario.topic;
    r.id = b.spec->id;
    r.op = b.spec->op;
    const auto start = std::chrono::steady_clock::now();
    std::string err = b.bind_error;
    if (err.empty()) {
      try {
        Body body = b.run();
        r.result = std::move(body.result);
        r.headline = std::move(body.headline);
        if (!body.judge.pass()) r.result["failed_expectations"] = body.judge.failures;
        r.status = body.judge.pass() ? CheckStatus::Pass : CheckStatus::Fail;
      } catch (const std::exception& e) {
        err = error_text(e);
      }
    }
    if (!err.empty()) {
      const std::string code = err.substr(0, err.find(':'));
      if (b.expected_error && *b.expected_error == code) {
        r.status = CheckStatus::Pass;
        r.result = {{"raised", err}};
        r.headline = "raised " + code + " as expected";
      } else {
        r.status = CheckStatus::Error;
        r.error = err;
        r.headline = err;
      }
    } else if (b.expected_error) {
      r.status = CheckStatus::Fail;
      r.result["failed_expectations"] = Json::array({"expected error " + *b.expected_error});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return report;
}

Report run_scenario_file(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return run_scenario(parse_scenario(ss.str(), path), overrides);
}

Report reproduce(const Overrides& overrides) {
  Report all;
  for (const auto& e : embedded_scenarios()) {
    const Scenario s = parse_scenario(e.text, e.name);
    Report r = run_scenario(s, overrides);
    for (auto& c : r.checks) all.checks.push_back(std::move(c));
  }
  return all;
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.status == CheckStatus::Pass; });
}

Json Report::to_json() const {
  Json rows = Json::array();
  Json topics = Json::object();
  std::size_t passed = 0, failed = 0, errors = 0;
  for (const auto& c : checks) {
    Json row{{"scenario", c.scenario}, {"topic", c.topic}, {"id", c.id},
             {"op", c.op},             {"status", status_name(c.status)}, {"headline", c.headline}};
    if (!c.error.empty()) row["error"] = c.error;
    row["result"] = c.result;
    rows.push_back(row);
    switch (c.status) {
      case CheckStatus::Pass: ++passed; break;
      case CheckStatus::Fail: ++failed; break;
      case CheckStatus::Error: ++errors; break;
    }
    const bool ok = c.status == CheckStatus::Pass;
    if (!topics.contains(c.topic)) {
      topics[c.topic] = ok ? "pass" : "fail";
    } else if (!ok) {
      topics[c.topic] = "fail";
    }
  }
  return Json{{"checks", rows},
              {"summary",
               {{"total", checks.size()},
                {"passed", passed},
                {"failed", failed},
                {"errors", errors},
                {"pass", pass()},
                {"topics", topics}}}};
}

std::string Report::table() const {
  std::ostringstream os;
  auto cell = [&](const std::string& s, std::size_t w) {
    std::string t = s.size() > w - 1 ? s.substr(0, w - 2) + "~" : s;
    os << std::left << std::setw(static_cast<int>(w)) << t;
  };
  cell("scenario", 26);
  cell("check", 26);
  cell("op", 20);
  cell("status", 8);
  os << std::right << std::setw(9) << "ms" << "  " << "summary\n";
  os << std::string(100, '-') << "\n";
  std::size_t passed = 0;
  for (const auto& c : checks) {
    cell(c.scenario, 26);
    cell(c.id, 26);
    cell(c.op, 20);
    cell(status_name(c.status), 8);
    os << std::right << std::setw(9) << std::fixed << std::setprecision(1) << c.seconds * 1e3
       << "  " << c.headline << "\n";
    if (c.status == CheckStatus::Pass) ++passed;
  }
  os << std::string(100, '-') << "\n";
  os << passed << "/" << checks.size() << " checks pass" << (pass() ? "" : " -- FAILURES") << "\n";
  return os.str();
}

}  // namespace dweak
