#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dweak/point.hpp"
#include "dweak/random.hpp"

namespace dweak {

/// l_p over finitely supported sequences, 1 <= p < inf. Basepoint is 0.
struct LpSpace {
  double p = 2.0;
};

/// Closed ball of radius r about 0 in l_p. Basepoint is 0.
struct LpBall {
  double p = 2.0;
  double radius = 1.0;
};

/// The real line with d(x, y) = |x - y|^alpha, 0 < alpha < 1.
struct SnowflakeLine {
  double alpha = 0.5;
};

/// Countably many atoms at mutual distance 1. Atoms are materialized lazily.
struct DiscreteSpace {};

/// n points (atoms 0..n-1) with an explicit distance matrix, row-major.
/// The matrix is not required to be a metric at construction; see
/// validate_space.
struct FiniteMetricSpace {
  std::size_t n = 0;
  std::vector<double> matrix;
  double at(std::size_t i, std::size_t j) const { return matrix[i * n + j]; }
};

/// Subset of l_1 given by listed members plus, optionally, the ray family
/// (constant + linear*n) * e_n for n >= 1.
struct CountableSubsetOfL1 {
  struct Ray {
    double constant = 1.0;
    double linear = 0.0;
    double coefficient(std::uint64_t n) const { return constant + linear * static_cast<double>(n); }
    friend bool operator==(const Ray&, const Ray&) = default;
  };
  std::vector<SparseVector> listed;
  std::optional<Ray> ray;

  bool contains(const SparseVector& x) const;
  /// Listed members first, then the ray members for n = 1..count.
  std::vector<SparseVector> materialize(std::uint64_t count) const;
};

/// Piecewise-linear functions on [0, 1] with the sup norm, standing in for
/// C[0,1]. Basepoint is the zero function.
struct SupNormSpace {};

using SpaceKind = std::variant<LpSpace, LpBall, SnowflakeLine, DiscreteSpace, FiniteMetricSpace,
                               CountableSubsetOfL1, SupNormSpace>;

/// Immutable, cheaply copyable handle to a catalog metric space with its
/// basepoint. Copies share the underlying data.
class Space {
 public:
  static Space lp(double p);
  static Space lp_ball(double p, double radius);
  static Space snowflake(double alpha, double base = 0.0);
  static Space discrete(std::uint64_t base = 0);
  /// Throws InvalidArgument unless the matrix is square with finite entries.
  static Space finite(std::vector<std::vector<double>> matrix, std::uint64_t base = 0);
  /// Discrete metric on n atoms, as a finite space.
  static Space finite_discrete(std::size_t n, std::uint64_t base = 0);
  /// Basepoint defaults to the zero vector, which must then be a member.
  static Space countable_l1(std::vector<SparseVector> listed,
                            std::optional<CountableSubsetOfL1::Ray> ray,
                            std::optional<SparseVector> base = std::nullopt);
  static Space sup_norm();

  const SpaceKind& kind() const noexcept { return data_->kind; }
  const Point& basepoint() const noexcept { return data_->basepoint; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&data_->kind);
  }

  /// LpSpace and SupNormSpace: closed under linear combinations, basepoint 0.
  bool is_normed() const noexcept;
  /// Spaces carrying the affine W-map (1-t)x + ty.
  bool supports_w_map() const noexcept;
  /// The exponent p for the l_p family (1 for CountableSubsetOfL1).
  std::optional<double> lp_exponent() const noexcept;

  bool contains(const Point& x) const;
  /// Throws MembershipError naming `what` when x is not in the space.
  void require_member(const Point& x, const char* what = "point") const;

  std::string name() const;

  friend bool operator==(const Space& a, const Space& b) { return a.data_ == b.data_; }

 private:
  struct Data {
    SpaceKind kind;
    Point basepoint;
  };
  Space(SpaceKind kind, Point basepoint);
  std::shared_ptr<const Data> data_;
};

/// Membership slack for the l_p ball.
inline constexpr double kBallSlack = 1e-12;

double distance(const Space& space, const Point& x, const Point& y);
/// Same as distance() without membership checks; callers guarantee membership.
double distance_unchecked(const Space& space, const Point& x, const Point& y);

struct Violation {
  std::string kind;  // "symmetry", "triangle", "diagonal", "positivity", "shape", ...
  std::string detail;
  std::vector<Point> points;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks the metric axioms: exhaustively on a FiniteMetricSpace, by seeded
/// sampling on the other variants. Violations are data, never thrown.
ValidationReport validate_space(const Space& space, std::uint64_t seed = 0,
                                std::size_t samples = 200);

/// Affine W-map (1-t)x + ty. Exact at t = 0 and t = 1.
/// Throws UnsupportedSpace on spaces without a W-map.
Point w_combine(const Space& space, const Point& x, const Point& y, double t);

/// Intersection of all closed balls of a finite space containing `members`,
/// returned as sorted atom ids. Throws EmptyInput on an empty set.
std::vector<std::uint64_t> hull(const Space& space, const std::vector<std::uint64_t>& members);

/// Draws a member of the space. Used by sampling-based checks.
Point sample_point(const Space& space, Rng& rng);

/// Norm of a point of a normed space or l_p ball (distance to 0).
double norm(const Space& space, const Point& x);

/// s*x + t*y in a normed space. Throws NotNormedSpace otherwise.
Point linear_combination(const Space& space, double s, const Point& x, double t, const Point& y);

}  // namespace dweak
