#include "dweak/point.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dweak/errors.hpp"

namespace dweak {

// ---------------------------------------------------------------------------
// SparseVector

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (e.index < 1) {
      throw InvalidArgumentError("sparse vector index must be >= 1, got " +
                                 std::to_string(e.index));
    }
    if (!std::isfinite(e.value)) {
      throw InvalidArgumentError("sparse vector value must be finite");
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVector out;
  out.entries_.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.entries_.empty() && out.entries_.back().index == e.index) {
      out.entries_.back().value += e.value;
    } else {
      out.entries_.push_back(e);
    }
  }
  std::erase_if(out.entries_, [](const Entry& e) { return e.value == 0.0; });
  return out;
}

SparseVector SparseVector::unit(Index n, double scale) {
  return from_entries({{n, scale}});
}

double SparseVector::at(Index n) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                             [](const Entry& e, Index i) { return e.index < i; });
  return (it != entries_.end() && it->index == n) ? it->value : 0.0;
}

Index SparseVector::max_index() const noexcept {
  return entries_.empty() ? 0 : entries_.back().index;
}

namespace {

// Calls f(index, x_k, y_k) over the union of both supports in index order.
template <class F>
void merge_visit(const SparseVector& x, const SparseVector& y, F&& f) {
  auto xs = x.entries();
  auto ys = y.entries();
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && xs[i].index < ys[j].index)) {
      f(xs[i].index, xs[i].value, 0.0);
      ++i;
    } else if (i == xs.size() || ys[j].index < xs[i].index) {
      f(ys[j].index, 0.0, ys[j].value);
      ++j;
    } else {
      f(xs[i].index, xs[i].value, ys[j].value);
      ++i;
      ++j;
    }
  }
}

double sum_pow(std::span<const double> magnitudes, double p) {
  // Scale by the largest magnitude so t*u with t ~ 1e18 cannot overflow.
  double m = 0.0;
  for (double a : magnitudes) m = std::max(m, a);
  if (m == 0.0) return 0.0;
  if (p == 1.0) {
    double s = 0.0;
    for (double a : magnitudes) s += a;
    return s;
  }
  double s = 0.0;
  for (double a : magnitudes) {
    const double r = a / m;
    s += (p == 2.0) ? r * r : std::pow(r, p);
  }
  return m * std::pow(s, 1.0 / p);
}

}  // namespace

SparseVector linear_combination(double a, const SparseVector& x, double b, const SparseVector& y) {
  std::vector<SparseVector::Entry> out;
  out.reserve(x.support_size() + y.support_size());
  merge_visit(x, y, [&](Index k, double xk, double yk) {
    const double v = a * xk + b * yk;
    if (v != 0.0) out.push_back({k, v});
  });
  return SparseVector::from_entries(std::move(out));
}

SparseVector operator+(const SparseVector& x, const SparseVector& y) {
  return linear_combination(1.0, x, 1.0, y);
}
SparseVector operator-(const SparseVector& x, const SparseVector& y) {
  return linear_combination(1.0, x, -1.0, y);
}
SparseVector operator-(const SparseVector& x) { return (-1.0) * x; }

SparseVector operator*(double s, const SparseVector& x) {
  std::vector<SparseVector::Entry> out;
  out.reserve(x.support_size());
  for (const auto& e : x.entries()) out.push_back({e.index, s * e.value});
  return SparseVector::from_entries(std::move(out));
}

double lp_norm(const SparseVector& x, double p) {
  std::vector<double> mags;
  mags.reserve(x.support_size());
  for (const auto& e : x.entries()) mags.push_back(std::abs(e.value));
  return sum_pow(mags, p);
}

double lp_distance(const SparseVector& x, const SparseVector& y, double p) {
  std::vector<double> mags;
  mags.reserve(x.support_size() + y.support_size());
  merge_visit(x, y, [&](Index, double a, double b) { mags.push_back(std::abs(a - b)); });
  return sum_pow(mags, p);
}

double dot(const SparseVector& x, const SparseVector& y) {
  double s = 0.0;
  merge_visit(x, y, [&](Index, double a, double b) { s += a * b; });
  return s;
}

double pow_abs_difference(double a, double delta, double p) {
  if (a == 0.0) return std::pow(std::abs(delta), p);
  if (std::abs(delta) <= 0.5 * std::abs(a)) {
    return std::pow(std::abs(a), p) * std::expm1(p * std::log1p(-delta / a));
  }
  return std::pow(std::abs(a - delta), p) - std::pow(std::abs(a), p);
}

double lp_norm_excess(const SparseVector& x, const SparseVector& u, double t, double p) {
  const double unorm = lp_norm(u, p);
  if (unorm == 0.0 || t == 0.0) return lp_norm(x, p);
  const double w = t * unorm;
  const double xnorm = lp_norm(x, p);
  if (xnorm >= 0.5 * w) {
    std::vector<double> mags;
    merge_visit(x, u, [&](Index, double xk, double uk) { mags.push_back(std::abs(xk - t * uk)); });
    return sum_pow(mags, p) - w;
  }
  // ||x - tu||^p / w^p = 1 + D with D = sum_k (|a_k - d_k|^p - |a_k|^p),
  // a = u/||u||, d = x/w. Then the excess is w * ((1 + D)^{1/p} - 1).
  double d_sum = 0.0;
  merge_visit(x, u, [&](Index, double xk, double uk) {
    d_sum += pow_abs_difference(uk / unorm, xk / w, p);
  });
  return w * std::expm1(std::log1p(d_sum) / p);
}

double lp_internal_value(const SparseVector& x, const SparseVector& w, double p) {
  if (x == w) return -lp_norm(w, p);
  if (w.empty()) return lp_norm(x, p);
  return lp_norm_excess(x, w, 1.0, p);
}

// ---------------------------------------------------------------------------
// PLFunction

PLFunction PLFunction::make(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() < 2 || knots.size() != values.size()) {
    throw InvalidArgumentError("piecewise-linear function needs >= 2 knots and matching values");
  }
  if (knots.front() != 0.0 || knots.back() != 1.0) {
    throw InvalidArgumentError("piecewise-linear knots must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) {
      throw InvalidArgumentError("piecewise-linear knots must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgumentError("piecewise-linear values must be finite");
  }
  PLFunction f;
  f.knots_ = std::move(knots);
  f.values_ = std::move(values);
  return f;
}

PLFunction PLFunction::constant(double c) { return make({0.0, 1.0}, {c, c}); }

double PLFunction::operator()(double t) const {
  if (t <= 0.0) return values_.front();
  if (t >= 1.0) return values_.back();
  auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
  const auto i = static_cast<std::size_t>(it - knots_.begin());
  if (knots_[i] == t) return values_[i];
  const double t0 = knots_[i - 1], t1 = knots_[i];
  const double lambda = (t - t0) / (t1 - t0);
  return (1.0 - lambda) * values_[i - 1] + lambda * values_[i];
}

std::vector<double> merged_knots(const PLFunction& f, const PLFunction& g) {
  std::vector<double> out;
  out.reserve(f.knots().size() + g.knots().size());
  std::set_union(f.knots().begin(), f.knots().end(), g.knots().begin(), g.knots().end(),
                 std::back_inserter(out));
  return out;
}

PLFunction linear_combination(double a, const PLFunction& f, double b, const PLFunction& g) {
  auto knots = merged_knots(f, g);
  std::vector<double> values;
  values.reserve(knots.size());
  for (double t : knots) values.push_back(a * f(t) + b * g(t));
  return PLFunction::make(std::move(knots), std::move(values));
}

double sup_norm(const PLFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const PLFunction& f, const PLFunction& g) {
  if (f == g) return 0.0;
  double m = 0.0;
  for (double t : merged_knots(f, g)) m = std::max(m, std::abs(f(t) - g(t)));
  return m;
}

// ---------------------------------------------------------------------------

std::string to_string(const Point& x) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SparseVector>) {
          os << '{';
          bool first = true;
          for (const auto& e : v.entries()) {
            if (!first) os << ", ";
            os << e.index << ':' << e.value;
            first = false;
          }
          os << '}';
        } else if constexpr (std::is_same_v<T, PLFunction>) {
          os << "pl[";
          for (std::size_t i = 0; i < v.knots().size(); ++i) {
            if (i) os << ", ";
            os << v.knots()[i] << "->" << v.values()[i];
          }
          os << ']';
        } else if constexpr (std::is_same_v<T, Atom>) {
          os << "atom(" << v.id << ')';
        } else {
          os << v.value;
        }
      },
      x);
  return os.str();
}

}  // namespace dweak
