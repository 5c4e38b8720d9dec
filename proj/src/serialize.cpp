#include "dweak/serialize.hpp"

#include <algorithm>
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

Json num(double v) { return std::isfinite(v) ? Json(v + 0.0) : Json(nullptr); }

std::string where(const std::string& at) { return at.empty() ? "/" : at; }

// Checked view of a JSON object with a fixed key set.
class Obj {
 public:
  Obj(const Json& j, std::string at, std::initializer_list<const char*> allowed)
      : j_(j), at_(std::move(at)) {
    if (!j.is_object()) throw ParseError("expected an object", 0, 0, where(at_));
    for (const auto& [key, value] : j.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) throw ParseError("unknown field '" + key + "'", 0, 0, path(key));
    }
  }

  std::string path(const std::string& key) const { return at_ + "/" + key; }
  bool has(const char* key) const { return j_.contains(key); }

  const Json& req(const char* key) const {
    if (!j_.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0, 0, where(at_));
    return j_.at(key);
  }

  double number(const char* key) const { return as_number(req(key), path(key)); }
  double number_or(const char* key, double d) const { return has(key) ? number(key) : d; }

  std::int64_t integer(const char* key) const { return as_integer(req(key), path(key)); }
  std::int64_t integer_or(const char* key, std::int64_t d) const {
    return has(key) ? integer(key) : d;
  }

  std::string string(const char* key) const {
    const Json& v = req(key);
    if (!v.is_string()) throw ParseError("expected a string", 0, 0, path(key));
    return v.get<std::string>();
  }

  bool boolean_or(const char* key, bool d) const {
    if (!has(key)) return d;
    const Json& v = req(key);
    if (!v.is_boolean()) throw ParseError("expected a boolean", 0, 0, path(key));
    return v.get<bool>();
  }

  const Json& array(const char* key) const {
    const Json& v = req(key);
    if (!v.is_array()) throw ParseError("expected an array", 0, 0, path(key));
    return v;
  }

  static double as_number(const Json& v, const std::string& at) {
    if (!v.is_number()) throw ParseError("expected a number", 0, 0, at);
    return v.get<double>();
  }

  static std::int64_t as_integer(const Json& v, const std::string& at) {
    if (!v.is_number_integer()) throw ParseError("expected an integer", 0, 0, at);
    return v.get<std::int64_t>();
  }

 private:
  const Json& j_;
  std::string at_;
};

// Wraps library errors raised while building values from JSON.
template <class F>
auto building(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(error_code_name(e.code())) + ": " + e.what(), 0, 0, where(at));
  }
}

std::string kind_of(const Json& j, const std::string& at) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("expected an object with a string 'kind'", 0, 0, where(at));
  }
  return j.at("kind").get<std::string>();
}

Json window_json(const Window& w) { return Json::array({w.first, w.last}); }

}  // namespace

// ---------------------------------------------------------------------------
// Points

Json to_json(const Point& x) {
  return std::visit(
      overloaded{
          [](const SparseVector& v) {
            Json entries = Json::array();
            for (const auto& e : v.entries()) entries.push_back(Json::array({e.index, e.value}));
            return Json{{"sparse", entries}};
          },
          [](const PLFunction& f) {
            return Json{{"pl",
                         {{"knots", std::vector<double>(f.knots().begin(), f.knots().end())},
                          {"values", std::vector<double>(f.values().begin(), f.values().end())}}}};
          },
          [](const Atom& a) { return Json{{"atom", a.id}}; },
          [](const Scalar& s) { return Json{{"scalar", s.value}}; },
      },
      x);
}

Point point_from_json(const Json& j, const std::string& at) {
  Obj o(j, at, {"sparse", "pl", "atom", "scalar"});
  if (j.size() != 1) throw ParseError("a point has exactly one of sparse, pl, atom, scalar", 0, 0, where(at));
  if (o.has("sparse")) {
    std::vector<SparseVector::Entry> entries;
    const Json& arr = o.array("sparse");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = o.path("sparse") + "/" + std::to_string(i);
      if (!arr[i].is_array() || arr[i].size() != 2) {
        throw ParseError("sparse entries are [index, value] pairs", 0, 0, p);
      }
      entries.push_back({Obj::as_integer(arr[i][0], p + "/0"), Obj::as_number(arr[i][1], p + "/1")});
    }
    return building(at, [&] { return Point{SparseVector::from_entries(std::move(entries))}; });
  }
  if (o.has("pl")) {
    Obj f(o.req("pl"), o.path("pl"), {"knots", "values"});
    std::vector<double> knots, values;
    for (const auto& k : f.array("knots")) knots.push_back(Obj::as_number(k, f.path("knots")));
    for (const auto& v : f.array("values")) values.push_back(Obj::as_number(v, f.path("values")));
    return building(at, [&] { return Point{PLFunction::make(std::move(knots), std::move(values))}; });
  }
  if (o.has("atom")) {
    const auto id = o.integer("atom");
    if (id < 0) throw ParseError("atom ids are nonnegative", 0, 0, o.path("atom"));
    return Atom{static_cast<std::uint64_t>(id)};
  }
  return Scalar{o.number("scalar")};
}

// ---------------------------------------------------------------------------
// Spaces

Json to_json(const Space& s) {
  return std::visit(
      overloaded{
          [](const LpSpace& k) { return Json{{"kind", "lp"}, {"p", k.p}}; },
          [](const LpBall& k) { return Json{{"kind", "lp_ball"}, {"p", k.p}, {"radius", k.radius}}; },
          [&](const SnowflakeLine& k) {
            return Json{{"kind", "snowflake"},
                        {"alpha", k.alpha},
                        {"base", std::get<Scalar>(s.basepoint()).value}};
          },
          [&](const DiscreteSpace&) {
            return Json{{"kind", "discrete"}, {"base", std::get<Atom>(s.basepoint()).id}};
          },
          [&](const FiniteMetricSpace& k) {
            Json m = Json::array();
            for (std::size_t i = 0; i < k.n; ++i) {
              Json row = Json::array();
              for (std::size_t j = 0; j < k.n; ++j) row.push_back(k.at(i, j));
              m.push_back(row);
            }
            return Json{{"kind", "finite"}, {"matrix", m}, {"base", std::get<Atom>(s.basepoint()).id}};
          },
          [&](const CountableSubsetOfL1& k) {
            Json listed = Json::array();
            for (const auto& v : k.listed) listed.push_back(to_json(Point{v}));
            Json j{{"kind", "countable_l1"}, {"listed", listed}};
            if (k.ray) j["ray"] = {{"constant", k.ray->constant}, {"linear", k.ray->linear}};
            j["base"] = to_json(s.basepoint());
            return j;
          },
          [](const SupNormSpace&) { return Json{{"kind", "sup_norm"}}; },
      },
      s.kind());
}

Space space_from_json(const Json& j, const std::string& at) {
  const std::string kind = kind_of(j, at);
  if (kind == "lp") {
    Obj o(j, at, {"kind", "p"});
    return building(at, [&] { return Space::lp(o.number("p")); });
  }
  if (kind == "lp_ball") {
    Obj o(j, at, {"kind", "p", "radius"});
    return building(at, [&] { return Space::lp_ball(o.number("p"), o.number_or("radius", 1.0)); });
  }
  if (kind == "snowflake") {
    Obj o(j, at, {"kind", "alpha", "base"});
    return building(at, [&] { return Space::snowflake(o.number("alpha"), o.number_or("base", 0.0)); });
  }
  if (kind == "discrete") {
    Obj o(j, at, {"kind", "base"});
    return Space::discrete(static_cast<std::uint64_t>(o.integer_or("base", 0)));
  }
  if (kind == "finite") {
    Obj o(j, at, {"kind", "matrix", "base"});
    std::vector<std::vector<double>> m;
    const Json& rows = o.array("matrix");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string p = o.path("matrix") + "/" + std::to_string(i);
      if (!rows[i].is_array()) throw ParseError("matrix rows are arrays", 0, 0, p);
      std::vector<double> row;
      for (const auto& v : rows[i]) row.push_back(Obj::as_number(v, p));
      m.push_back(std::move(row));
    }
    return building(at, [&] {
      return Space::finite(std::move(m), static_cast<std::uint64_t>(o.integer_or("base", 0)));
    });
  }
  if (kind == "countable_l1") {
    Obj o(j, at, {"kind", "listed", "ray", "base"});
    std::vector<SparseVector> listed;
    if (o.has("listed")) {
      const Json& arr = o.array("listed");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = o.path("listed") + "/" + std::to_string(i);
        Point x = point_from_json(arr[i], p);
        auto* v = std::get_if<SparseVector>(&x);
        if (v == nullptr) throw ParseError("listed members are sparse vectors", 0, 0, p);
        listed.push_back(*v);
      }
    }
    std::optional<CountableSubsetOfL1::Ray> ray;
    if (o.has("ray")) {
      Obj r(o.req("ray"), o.path("ray"), {"constant", "linear"});
      ray = CountableSubsetOfL1::Ray{r.number_or("constant", 1.0), r.number_or("linear", 0.0)};
    }
    std::optional<SparseVector> base;
    if (o.has("base")) {
      Point b = point_from_json(o.req("base"), o.path("base"));
      auto* v = std::get_if<SparseVector>(&b);
      if (v == nullptr) throw ParseError("base must be a sparse vector", 0, 0, o.path("base"));
      base = *v;
    }
    return building(at, [&] { return Space::countable_l1(std::move(listed), ray, base); });
  }
  if (kind == "sup_norm") {
    Obj o(j, at, {"kind"});
    return Space::sup_norm();
  }
  throw ParseError("unknown space kind '" + kind + "'", 0, 0, where(at) + "/kind");
}

// ---------------------------------------------------------------------------
// Functionals

Json to_json(const MetricFunctional& h) {
  return std::visit(
      overloaded{
          [](const Internal& k) { return Json{{"kind", "internal"}, {"w", to_json(k.w)}}; },
          [](const BusemannNumeric& k) {
            return Json{{"kind", "busemann_numeric"},
                        {"u", to_json(k.u)},
                        {"tol", k.tol},
                        {"max_doublings", k.max_doublings}};
          },
          [](const BusemannClosedLp& k) {
            return Json{{"kind", "busemann_closed"}, {"p", k.p}, {"u", to_json(Point{k.u})}};
          },
          [](const L1Linear& k) {
            Json signs = Json::array();
            for (const auto& [i, s] : k.signs) signs.push_back(Json::array({i, s}));
            Json j{{"kind", "l1_linear"}, {"signs", signs}};
            if (k.tail) j["tail"] = {{"from", k.tail->from}, {"sign", k.tail->sign}};
            return j;
          },
          [](const HilbertBall& k) {
            return Json{{"kind", "hilbert_ball"}, {"z", to_json(Point{k.z})}, {"c", k.c}};
          },
          [](const PointEval& k) { return Json{{"kind", "point_eval"}, {"t", k.t}, {"sign", k.sign}}; },
          [](const ZeroFunctional&) { return Json{{"kind", "zero"}}; },
          [](const Rebased& k) {
            return Json{{"kind", "rebased"}, {"inner", to_json(*k.inner)}, {"b", to_json(k.b)}};
          },
          [](const ShiftScaleView& k) {
            return Json{{"kind", "shift_scale"}, {"w", to_json(k.w)}, {"s", k.s},
                        {"t", k.t},             {"v", to_json(k.v)}};
          },
      },
      h.kind());
}

MetricFunctional functional_from_json(const Space& space, const Json& j, const std::string& at) {
  const std::string kind = kind_of(j, at);
  auto make = [&](FunctionalKind k) {
    return building(at, [&] { return MetricFunctional(space, std::move(k)); });
  };
  if (kind == "internal") {
    Obj o(j, at, {"kind", "w"});
    return make(Internal{point_from_json(o.req("w"), o.path("w"))});
  }
  if (kind == "busemann_numeric") {
    Obj o(j, at, {"kind", "u", "tol", "max_doublings"});
    return make(BusemannNumeric{point_from_json(o.req("u"), o.path("u")), o.number_or("tol", 1e-9),
                                static_cast<int>(o.integer_or("max_doublings", 60))});
  }
  if (kind == "busemann_closed") {
    Obj o(j, at, {"kind", "p", "u"});
    Point u = point_from_json(o.req("u"), o.path("u"));
    auto* v = std::get_if<SparseVector>(&u);
    if (v == nullptr) throw ParseError("u must be a sparse vector", 0, 0, o.path("u"));
    return make(BusemannClosedLp{o.number("p"), *v});
  }
  if (kind == "l1_linear") {
    Obj o(j, at, {"kind", "signs", "tail"});
    L1Linear l;
    if (o.has("signs")) {
      const Json& arr = o.array("signs");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = o.path("signs") + "/" + std::to_string(i);
        if (!arr[i].is_array() || arr[i].size() != 2) {
          throw ParseError("signs are [index, +1|-1] pairs", 0, 0, p);
        }
        l.signs.push_back({Obj::as_integer(arr[i][0], p),
                           static_cast<int>(Obj::as_integer(arr[i][1], p))});
      }
    }
    if (o.has("tail")) {
      Obj t(o.req("tail"), o.path("tail"), {"from", "sign"});
      l.tail = L1Linear::Tail{t.integer_or("from", 1), static_cast<int>(t.integer("sign"))};
    }
    return make(std::move(l));
  }
  if (kind == "hilbert_ball") {
    Obj o(j, at, {"kind", "z", "c"});
    Point z = point_from_json(o.req("z"), o.path("z"));
    auto* v = std::get_if<SparseVector>(&z);
    if (v == nullptr) throw ParseError("z must be a sparse vector", 0, 0, o.path("z"));
    return make(HilbertBall{*v, o.number("c")});
  }
  if (kind == "point_eval") {
    Obj o(j, at, {"kind", "t", "sign"});
    return make(PointEval{o.number("t"), static_cast<int>(o.integer_or("sign", 1))});
  }
  if (kind == "zero") {
    Obj o(j, at, {"kind"});
    return make(ZeroFunctional{});
  }
  if (kind == "rebased") {
    Obj o(j, at, {"kind", "inner", "b"});
    auto inner = std::make_shared<const MetricFunctional>(
        functional_from_json(space, o.req("inner"), o.path("inner")));
    return make(Rebased{inner, point_from_json(o.req("b"), o.path("b")), 0.0});
  }
  if (kind == "shift_scale") {
    Obj o(j, at, {"kind", "w", "s", "t", "v"});
    return make(ShiftScaleView{point_from_json(o.req("w"), o.path("w")), o.number("s"),
                               o.number_or("t", 0.0), point_from_json(o.req("v"), o.path("v"))});
  }
  throw ParseError("unknown functional kind '" + kind + "'", 0, 0, where(at) + "/kind");
}

// ---------------------------------------------------------------------------
// Sequences

Json to_json(const SequenceSpec& seq) {
  auto points = [](const std::vector<Point>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(to_json(x));
    return a;
  };
  return std::visit(
      overloaded{
          [&](const ExplicitList& g) {
            return Json{{"kind", "explicit"}, {"prefix", points(g.prefix)}, {"period", points(g.period)}};
          },
          [](const CoordinateBlowup& g) {
            return Json{{"kind", "blowup"}, {"scale", g.scale}, {"growth", g.growth}};
          },
          [](const Alternating& g) {
            return Json{{"kind", "alternating"}, {"p", to_json(g.p)}, {"q", to_json(g.q)}};
          },
          [](const SeededRandomBounded& g) {
            return Json{{"kind", "random_bounded"}, {"seed", g.seed},         {"width", g.width},
                        {"shift", g.shift},         {"min_norm", g.min_norm}, {"max_norm", g.max_norm},
                        {"decay", g.decay},         {"decay_width", g.decay_width}};
          },
          [](const UserFormula& g) {
            Json terms = Json::array();
            for (const auto& t : g.terms) {
              Json j{{"a", t.a}, {"power", t.power}, {"alternating", t.alternating}};
              if (t.fixed) {
                j["fixed"] = to_json(*t.fixed);
              } else {
                j["offset"] = t.offset;
              }
              terms.push_back(j);
            }
            return Json{{"kind", "formula"}, {"terms", terms}};
          },
          [](const DistinctAtoms& g) { return Json{{"kind", "distinct_atoms"}, {"offset", g.offset}}; },
          [](const Interleave& g) {
            return Json{{"kind", "interleave"}, {"a", to_json(*g.a)}, {"b", to_json(*g.b)}};
          },
          [](const Combination& g) {
            return Json{{"kind", "combination"}, {"s", g.s}, {"a", to_json(*g.a)},
                        {"t", g.t},             {"b", to_json(*g.b)}};
          },
      },
      seq.generator());
}

SequenceSpec sequence_from_json(const Space& space, const Json& j, const std::string& at) {
  const std::string kind = kind_of(j, at);
  auto make = [&](Generator g) {
    return building(at, [&] { return SequenceSpec(space, std::move(g)); });
  };
  auto points = [](const Obj& o, const char* key) {
    std::vector<Point> out;
    if (!o.has(key)) return out;
    const Json& arr = o.array(key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(point_from_json(arr[i], o.path(key) + "/" + std::to_string(i)));
    }
    return out;
  };
  if (kind == "explicit") {
    Obj o(j, at, {"kind", "prefix", "period"});
    return make(ExplicitList{points(o, "prefix"), points(o, "period")});
  }
  if (kind == "blowup") {
    Obj o(j, at, {"kind", "scale", "growth"});
    return make(CoordinateBlowup{o.number_or("scale", 1.0), o.number_or("growth", 0.0)});
  }
  if (kind == "alternating") {
    Obj o(j, at, {"kind", "p", "q"});
    return make(Alternating{point_from_json(o.req("p"), o.path("p")),
                            point_from_json(o.req("q"), o.path("q"))});
  }
  if (kind == "random_bounded") {
    Obj o(j, at, {"kind", "seed", "width", "shift", "min_norm", "max_norm", "decay", "decay_width"});
    SeededRandomBounded g;
    g.seed = static_cast<std::uint64_t>(o.integer_or("seed", 0));
    g.width = o.integer_or("width", g.width);
    g.shift = o.integer_or("shift", g.shift);
    g.min_norm = o.number_or("min_norm", g.min_norm);
    g.max_norm = o.number_or("max_norm", g.max_norm);
    g.decay = o.number_or("decay", g.decay);
    g.decay_width = o.integer_or("decay_width", g.decay_width);
    return make(g);
  }
  if (kind == "formula") {
    Obj o(j, at, {"kind", "terms"});
    UserFormula f;
    const Json& arr = o.array("terms");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj t(arr[i], o.path("terms") + "/" + std::to_string(i),
            {"a", "power", "alternating", "fixed", "offset"});
      UserFormula::Term term;
      term.a = t.number_or("a", 1.0);
      term.power = static_cast<int>(t.integer_or("power", 0));
      term.alternating = t.boolean_or("alternating", false);
      if (t.has("fixed")) term.fixed = point_from_json(t.req("fixed"), t.path("fixed"));
      term.offset = t.integer_or("offset", 0);
      f.terms.push_back(std::move(term));
    }
    return make(std::move(f));
  }
  if (kind == "distinct_atoms") {
    Obj o(j, at, {"kind", "offset"});
    return make(DistinctAtoms{static_cast<std::uint64_t>(o.integer_or("offset", 0))});
  }
  if (kind == "interleave") {
    Obj o(j, at, {"kind", "a", "b"});
    return building(at, [&] {
      return interleave(sequence_from_json(space, o.req("a"), o.path("a")),
                        sequence_from_json(space, o.req("b"), o.path("b")));
    });
  }
  if (kind == "combination") {
    Obj o(j, at, {"kind", "s", "a", "t", "b"});
    return building(at, [&] {
      return combine(o.number_or("s", 1.0), sequence_from_json(space, o.req("a"), o.path("a")),
                     o.number_or("t", 1.0), sequence_from_json(space, o.req("b"), o.path("b")));
    });
  }
  throw ParseError("unknown sequence kind '" + kind + "'", 0, 0, where(at) + "/kind");
}

// ---------------------------------------------------------------------------
// Results

Json to_json(const Verdict& v) {
  Json j{{"outcome", outcome_name(v.outcome)}, {"candidate", to_json(v.candidate)},
         {"margin", num(v.margin)},            {"gap", num(v.gap)}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.witness) j["witness_text"] = v.witness->describe();
  if (v.witness_index) j["witness_index"] = *v.witness_index;
  if (v.probe) j["probe"] = to_json(*v.probe);
  if (v.witness_term) j["witness_term"] = *v.witness_term;
  j["window"] = window_json(v.window);
  j["horizon"] = v.horizon;
  j["tol"] = v.tol;
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

Json to_json(const RegionDescriptor& d) {
  const char* kind = "all_points";
  switch (d.kind) {
    case RegionKind::NormBall: kind = "norm_ball"; break;
    case RegionKind::AllPoints: kind = "all_points"; break;
    case RegionKind::Empty: kind = "empty"; break;
    case RegionKind::Singleton: kind = "singleton"; break;
  }
  Json j{{"kind", kind}};
  if (d.kind == RegionKind::NormBall) {
    j["p"] = d.p;
    j["radius"] = d.radius;
  }
  if (d.point) j["point"] = to_json(*d.point);
  if (!d.formula.empty()) j["formula"] = d.formula;
  return j;
}

Json to_json(const LambdaEstimate& e) {
  std::size_t members = 0;
  Json points = Json::array();
  for (std::size_t i = 0; i < e.grid.size(); ++i) {
    if (e.member(i)) ++members;
    points.push_back({{"z", to_json(e.grid[i])}, {"outcome", outcome_name(e.verdicts[i].outcome)}});
  }
  Json j{{"grid_size", e.grid.size()}, {"members", members}};
  j["descriptor"] = e.descriptor ? to_json(*e.descriptor) : Json(nullptr);
  j["disagreements"] = e.disagreements;
  j["agrees"] = e.agrees();
  j["points"] = points;
  return j;
}

Json to_json(const GlidingHump& g) {
  Json blocks = Json::array(), signs = Json::array();
  for (const auto& [a, b] : g.blocks) blocks.push_back(Json::array({a, b}));
  for (const auto& [m, s] : g.signs) signs.push_back(Json::array({m, s}));
  return Json{{"eps", g.eps},       {"indices", g.indices},
              {"blocks", blocks},   {"signs", signs},
              {"values", g.values}, {"certified_min", num(g.certified_min)},
              {"bound", g.eps / 4}, {"certified", g.certified}};
}

Json to_json(const UniformConvexityReport& r) {
  Json j{{"branch", branch_name(r.branch)}, {"gap", r.gap}, {"tail_distance", num(r.tail_distance)},
         {"internals_tested", r.internals_tested}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const DiscreteClassification& c) {
  Json rec = Json::array(), cands = Json::array();
  for (const auto& a : c.recurrent) rec.push_back(a.id);
  for (std::size_t i = 0; i < c.candidates.size(); ++i) {
    cands.push_back({{"atom", c.candidates[i].id}, {"outcome", outcome_name(c.verdicts[i].outcome)}});
  }
  Json j{{"case", discrete_case_name(c.kind)}, {"lambda", c.lambda}, {"recurrent", rec}};
  if (c.point) j["point"] = c.point->id;
  j["candidates"] = cands;
  j["disagreements"] = c.disagreements;
  return j;
}

Json to_json(const DistanceBoundReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"w", to_json(row.w)},
                    {"d_zw", row.lhs},
                    {"liminf", num(row.liminf)},
                    {"trend", trend_name(row.trend)},
                    {"holds", row.holds}});
  }
  return Json{{"precondition", outcome_name(r.precondition)}, {"rows", rows}, {"all_hold", r.all_hold()}};
}

Json to_json(const CompactificationTable& t) {
  return Json{{"rows", t.rows},
              {"anchors", t.anchors},
              {"column_max", t.column_max},
              {"rows_distinct", t.rows_distinct},
              {"lipschitz_exact", t.lipschitz_exact},
              {"vanish_at_basepoint", t.vanish_at_basepoint},
              {"max_row_matches", t.max_row_matches}};
}

Json to_json(const DiagonalResult& d) {
  return Json{{"indices", d.indices}, {"limits", d.limits}, {"widths", d.widths}};
}

Json to_json(const PropertyReport& r) {
  Json j{{"samples", r.samples},
         {"seed", r.seed},
         {"basepoint_value", r.basepoint_value},
         {"max_lipschitz_ratio", r.max_lipschitz_ratio},
         {"max_lipschitz_excess", r.max_lipschitz_excess},
         {"max_w_convexity_violation", r.max_w_convexity_violation}};
  if (r.max_subadditivity_violation) j["max_subadditivity_violation"] = *r.max_subadditivity_violation;
  if (r.max_homogeneity_residual) j["max_homogeneity_residual"] = *r.max_homogeneity_residual;
  j["ok"] = r.ok();
  return j;
}

Json to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json pts = Json::array();
    for (const auto& p : x.points) pts.push_back(to_json(p));
    v.push_back({{"kind", x.kind}, {"detail", x.detail}, {"points", pts}});
  }
  return Json{{"violations", v}, {"seed", r.seed}, {"checks", r.checks}, {"ok", r.ok()}};
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    // Drop nlohmann's own "[json.exception.parse_error.101] parse error at line x, column y: ".
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError((source.empty() ? "" : source + ": ") + msg, line, column);
  }
}

}  // namespace dweak
