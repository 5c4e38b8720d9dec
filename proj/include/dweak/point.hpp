#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dweak {

using Index = std::int64_t;

/// Finite-support vector of a sequence space (indices start at 1).
///
/// Entries are sorted by index and never hold an explicit zero, so two
/// vectors are equal exactly when their representations are equal. The
/// unit vector e_n is `SparseVector::unit(n)`.
class SparseVector {
 public:
  struct Entry {
    Index index;
    double value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseVector() = default;

  /// Sorts, sums duplicate indices and drops zeros. Throws InvalidArgument on
  /// an index < 1 or a non-finite value.
  static SparseVector from_entries(std::vector<Entry> entries);
  static SparseVector unit(Index n, double scale = 1.0);

  std::span<const Entry> entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t support_size() const noexcept { return entries_.size(); }
  double at(Index n) const noexcept;
  /// Largest index in the support, 0 for the zero vector.
  Index max_index() const noexcept;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

SparseVector operator+(const SparseVector& x, const SparseVector& y);
SparseVector operator-(const SparseVector& x, const SparseVector& y);
SparseVector operator-(const SparseVector& x);
SparseVector operator*(double s, const SparseVector& x);
/// a*x + b*y computed in one merge pass.
SparseVector linear_combination(double a, const SparseVector& x, double b, const SparseVector& y);

double lp_norm(const SparseVector& x, double p);
double lp_distance(const SparseVector& x, const SparseVector& y, double p);
double dot(const SparseVector& x, const SparseVector& y);

/// |a - delta|^p - |a|^p without cancellation when |delta| << |a|.
double pow_abs_difference(double a, double delta, double p);

/// ||x - t*u||_p - t*||u||_p.
///
/// When t*||u|| dominates ||x|| the two norms nearly cancel; this evaluates
/// the difference through log1p/expm1 so the result keeps full relative
/// accuracy for t up to ~1e18.
double lp_norm_excess(const SparseVector& x, const SparseVector& u, double t, double p);

/// ||x - w||_p - ||w||_p, accurate both for ||x|| << ||w|| and for x ~ w.
double lp_internal_value(const SparseVector& x, const SparseVector& w, double p);

/// Continuous piecewise-linear function on [0, 1].
///
/// Knots are strictly increasing with first 0 and last 1. The sup of a
/// piecewise-linear function is attained at a knot, which makes the sup
/// metric exact on the merged knot grid.
class PLFunction {
 public:
  /// The zero function.
  PLFunction() : knots_{0.0, 1.0}, values_{0.0, 0.0} {}

  /// Throws InvalidArgument unless the knots are valid.
  static PLFunction make(std::vector<double> knots, std::vector<double> values);
  static PLFunction constant(double c);

  double operator()(double t) const;
  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const PLFunction&, const PLFunction&) = default;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
};

std::vector<double> merged_knots(const PLFunction& f, const PLFunction& g);
PLFunction linear_combination(double a, const PLFunction& f, double b, const PLFunction& g);
double sup_norm(const PLFunction& f);
double sup_distance(const PLFunction& f, const PLFunction& g);

struct Atom {
  std::uint64_t id = 0;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Scalar {
  double value = 0.0;
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

using Point = std::variant<SparseVector, PLFunction, Atom, Scalar>;

std::string to_string(const Point& x);

inline Point sparse(std::vector<SparseVector::Entry> entries) {
  return SparseVector::from_entries(std::move(entries));
}
inline Point unit(Index n, double scale = 1.0) { return SparseVector::unit(n, scale); }
inline Point atom(std::uint64_t id) { return Atom{id}; }
inline Point scalar(double v) { return Scalar{v}; }

}  // namespace dweak
