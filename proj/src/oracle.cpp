#include "dweak/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dweak/errors.hpp"
#include "dweak/functional.hpp"

namespace dweak {

CompactificationTable finite_compactification(const Space& space) {
  const auto* f = space.as<FiniteMetricSpace>();
  if (f == nullptr) throw UnsupportedSpaceError("compactification by enumeration needs a finite space");
  const auto report = validate_space(space);
  if (!report.ok()) {
    throw InvalidSpaceError("not a metric: " + report.violations.front().kind + " " +
                            report.violations.front().detail);
  }
  const std::size_t n = f->n;
  const std::size_t o = std::get<Atom>(space.basepoint()).id;
  CompactificationTable t{space, {}, {}, {}, true, true, true, true};
  for (std::size_t w = 0; w < n; ++w) {
    t.anchors.push_back(w);
    std::vector<double> row(n);
    for (std::size_t x = 0; x < n; ++x) row[x] = f->at(x, w) - f->at(o, w);
    t.rows.push_back(std::move(row));
  }
  t.column_max.assign(n, -std::numeric_limits<double>::infinity());
  for (const auto& row : t.rows) {
    if (row[o] != 0.0) t.vanish_at_basepoint = false;
    for (std::size_t x = 0; x < n; ++x) {
      t.column_max[x] = std::max(t.column_max[x], row[x]);
      for (std::size_t y = 0; y < n; ++y) {
        if (std::abs(row[x] - row[y]) > f->at(x, y)) t.lipschitz_exact = false;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.rows[i] == t.rows[j]) t.rows_distinct = false;
    }
  }
  for (std::size_t w = 0; w < n; ++w) {
    if (t.column_max[w] != f->at(o, w)) t.max_row_matches = false;
  }
  return t;
}

Verdict brute_force_dweak(const Space& space, const SequenceSpec& seq, const Point& z) {
  const auto* f = space.as<FiniteMetricSpace>();
  if (f == nullptr) throw UnsupportedSpaceError("brute force needs a finite space");
  const auto form = seq.periodic_form();
  if (!form) throw NotEventuallyPeriodicError("sequence has no exact periodic description");
  space.require_member(z, "candidate");
  for (const auto& x : form->period) space.require_member(x, "period term");
  const std::size_t o = std::get<Atom>(space.basepoint()).id;
  const std::size_t zi = std::get<Atom>(z).id;

  Verdict v;
  v.candidate = z;
  v.tol = 0.0;
  v.reason = "exact";
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t w = 0; w < f->n; ++w) {
    double liminf = std::numeric_limits<double>::infinity();
    for (const auto& x : form->period) {
      liminf = std::min(liminf, f->at(std::get<Atom>(x).id, w) - f->at(o, w));
    }
    const double hz = f->at(zi, w) - f->at(o, w);
    if (liminf < hz) {
      v.outcome = Outcome::Violation;
      v.gap = hz - liminf;
      v.margin = -v.gap;
      v.witness = MetricFunctional::internal(space, Atom{w});
      v.witness_index = w;
      v.reason = "internal(w=atom(" + std::to_string(w) + ")) has exact liminf below h(z)";
      return v;
    }
    margin = std::min(margin, liminf - hz);
  }
  v.outcome = Outcome::Consistent;
  v.margin = margin;
  return v;
}

std::vector<std::uint64_t> IndexSchedule::indices() const {
  std::vector<std::uint64_t> out;
  if (kind == Kind::Geometric) {
    for (std::size_t j = 0; j < std::min<std::size_t>(count, 64); ++j) {
      out.push_back(std::uint64_t{1} << j);
    }
  } else {
    for (std::size_t n = 1; n <= count; ++n) out.push_back(n);
  }
  return out;
}

DiagonalResult diagonal_subsequence(const SequenceSpec& w, const std::vector<Point>& grid,
                                    double tol, const IndexSchedule& schedule,
                                    std::size_t min_remaining) {
  if (!(tol > 0.0)) throw InvalidArgumentError("tol must be positive");
  const Space& space = w.space();
  for (const auto& g : grid) space.require_member(g, "grid point");
  std::vector<std::uint64_t> remaining = schedule.indices();
  std::vector<MetricFunctional> internals;
  internals.reserve(remaining.size());
  for (auto n : remaining) internals.push_back(MetricFunctional::internal(space, w.at(n)));
  std::vector<std::size_t> alive(remaining.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  DiagonalResult out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> values(internals.size());
    for (auto i : alive) values[i] = internals[i](grid[k]);
    const double r = distance(space, space.basepoint(), grid[k]);
    double lo = -r, hi = r;
    const double target = std::ldexp(tol, -static_cast<int>(k + 1));
    while (hi - lo > target) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      std::size_t below = 0, above = 0;
      for (auto i : alive) {
        if (values[i] <= mid) {
          ++below;
        } else {
          ++above;
        }
      }
      bool keep_low = below > above;
      if (below == above) keep_low = values[alive.back()] <= mid;
      std::vector<std::size_t> next;
      for (auto i : alive) {
        if ((values[i] <= mid) == keep_low) next.push_back(i);
      }
      alive = std::move(next);
      (keep_low ? hi : lo) = mid;
      if (alive.size() < min_remaining) {
        throw NoStabilizationError("only " + std::to_string(alive.size()) +
                                   " indices remain at grid point " + std::to_string(k));
      }
    }
    out.limits.push_back(0.5 * (lo + hi));
    out.widths.push_back(hi - lo);
  }
  for (auto i : alive) out.indices.push_back(remaining[i]);
  return out;
}

SnowflakeLimit snowflake_limit_check(const SequenceSpec& w, const std::vector<Point>& grid,
                                     double tol, const IndexSchedule& schedule) {
  if (!w.space().as<SnowflakeLine>()) {
    throw UnsupportedSpaceError("snowflake check needs a snowflake line, got " + w.space().name());
  }
  SnowflakeLimit out;
  out.table = diagonal_subsequence(w, grid, tol, schedule);
  for (double v : out.table.limits) out.zero_residual = std::max(out.zero_residual, std::abs(v));
  const auto idx = schedule.indices();
  if (idx.size() >= 2) {
    const double a = std::abs(std::get<Scalar>(w.at(idx[idx.size() / 2])).value);
    const double b = std::abs(std::get<Scalar>(w.at(idx.back())).value);
    out.escapes = b > 2.0 * a && b > 1e6;
  }
  return out;
}

CrossValidation busemann_cross_validate(double p, std::size_t trials, std::uint64_t seed) {
  const Space space = Space::lp(p);
  Rng rng(seed);
  CrossValidation cv;
  cv.trials = trials;
  cv.seed = seed;
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<SparseVector::Entry> ue, xe;
    for (Index k = 1; k <= 5; ++k) {
      if (rng.uniform() < 0.7) ue.push_back({k, rng.uniform(-1.0, 1.0)});
    }
    if (ue.empty()) ue.push_back({1, 1.0});
    for (Index k = 1; k <= 6; ++k) {
      if (rng.uniform() < 0.7) xe.push_back({k, rng.uniform(-2.0, 2.0)});
    }
    SparseVector u = SparseVector::from_entries(std::move(ue));
    u = (1.0 / lp_norm(u, p)) * u;
    const SparseVector x = SparseVector::from_entries(std::move(xe));
    const double closed = busemann_closed_lp(p, u, x);
    const double numeric = busemann_numeric(space, u, x).value;
    const double res = std::abs(closed - numeric);
    if (res >= cv.max_residual) {
      cv.max_residual = res;
      cv.worst_u = u;
      cv.worst_x = x;
    }
  }
  return cv;
}

Space random_finite_space(std::size_t n, Rng& rng, int max_weight) {
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(max_weight)));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return Space::finite(std::move(d));
}

}  // namespace dweak
