#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dweak/point.hpp"
#include "dweak/space.hpp"

namespace dweak {

class MetricFunctional;

/// h_w(x) = d(x, w) - d(o, w).
struct Internal {
  Point w;
};

/// lim_t (||x - t u|| - t), evaluated on the doubling schedule t = 1, 2, 4, ...
struct BusemannNumeric {
  Point u;
  double tol = 1e-9;
  int max_doublings = 60;
};

/// Busemann functional of l_p through its subdifferential formula.
struct BusemannClosedLp {
  double p = 2.0;
  SparseVector u;
};

/// x -> sum_{k in I} eps(k) x(k) on l_1. `signs` lists finitely many
/// indices; `tail`, when present, adds every index >= tail->from that is not
/// listed, all with the same sign.
struct L1Linear {
  struct Tail {
    Index from = 1;
    int sign = 1;
    friend bool operator==(const Tail&, const Tail&) = default;
  };
  std::vector<std::pair<Index, int>> signs;
  std::optional<Tail> tail;
};

/// x -> sqrt(||x||^2 - 2<x, z> + c^2) - c on an l_2 ball, ||z|| <= c.
struct HilbertBall {
  SparseVector z;
  double c = 0.0;
};

/// f -> sign * f(t) on C[0,1].
struct PointEval {
  double t = 0.0;
  int sign = 1;
};

struct ZeroFunctional {};

/// eta(x) = h(x) - h(b).
struct Rebased {
  std::shared_ptr<const MetricFunctional> inner;
  Point b;
  double offset = 0.0;  // h(b)
};

/// eta(x) = (h_w(s x + t v) - h_w(t v)) / |s| in a normed space.
struct ShiftScaleView {
  Point w;
  double s = 1.0;
  double t = 0.0;
  Point v;
};

using FunctionalKind = std::variant<Internal, BusemannNumeric, BusemannClosedLp, L1Linear,
                                    HilbertBall, PointEval, ZeroFunctional, Rebased, ShiftScaleView>;

/// A metric functional on a fixed space. Immutable; evaluation is pure.
class MetricFunctional {
 public:
  /// Validates parameters against the space (membership of anchors, unit
  /// directions, ||z|| <= c <= r, ...).
  MetricFunctional(Space space, FunctionalKind kind);

  static MetricFunctional internal(Space space, Point w);
  static MetricFunctional zero(Space space);

  const Space& space() const noexcept { return space_; }
  const FunctionalKind& kind() const noexcept { return kind_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&kind_);
  }

  /// Evaluation without the membership check. Callers guarantee x is a member.
  double operator()(const Point& x) const;

  /// Anchor point of an internal (also through rebasing), if any.
  std::optional<Point> internal_anchor() const;

  bool is_busemann() const noexcept;

  std::string describe() const;

 private:
  Space space_;
  FunctionalKind kind_;
};

/// Checked evaluation. Throws MembershipError.
double eval(const MetricFunctional& h, const Point& x);

struct BusemannValue {
  double value = 0.0;
  bool converged = false;
  double t_final = 0.0;
};

/// Throws NotNormedSpace on non-normed spaces and NotUnitVector if
/// | ||u|| - 1 | > 1e-12.
BusemannValue busemann_numeric(const Space& space, const Point& u, const Point& x,
                               double tol = 1e-9, int max_doublings = 60);

/// Throws NotUnitVector.
double busemann_closed_lp(double p, const SparseVector& u, const SparseVector& x);

/// eta(x) = h(x) - h(b). Rebasing a rebased functional replaces its base.
MetricFunctional rebase(const MetricFunctional& h, const Point& b);

struct ShiftScale {
  MetricFunctional eta;   // Internal(z), z = (w - t v) / s
  double offset = 0.0;    // h(t v)
  MetricFunctional view;  // the same eta, evaluated through h directly
};

/// h(s x + t v) = |s| eta(x) + h(t v) for an internal h on a normed space.
/// Throws ZeroScale when s = 0.
ShiftScale shift_scale(const MetricFunctional& h, double s, double t, const Point& v);

struct Separation {
  MetricFunctional h;
  double gap = 0.0;  // h(y) - h(x)
};

/// Busemann functional along (x - y)/||x - y||. Throws EqualPoints.
Separation separating_busemann(const Space& space, const Point& x, const Point& y);

struct NormSup {
  double sup_value = 0.0;
  Point witness;                 // -v/||v|| (v itself when v = 0)
  double max_sampled = 0.0;      // largest value over the sampled directions
  std::size_t directions = 0;
};

NormSup norm_via_busemann(const Space& space, const Point& v, std::size_t n_directions,
                          std::uint64_t seed = 0);

struct PropertyReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double basepoint_value = 0.0;
  double max_lipschitz_ratio = 0.0;
  double max_lipschitz_excess = 0.0;  // max |h(x)-h(y)| - d(x,y)
  double max_w_convexity_violation = 0.0;
  std::optional<double> max_subadditivity_violation;
  std::optional<double> max_homogeneity_residual;

  bool ok(double tol = 1e-7) const;
};

PropertyReport check_properties(const MetricFunctional& h, std::size_t samples,
                                std::uint64_t seed = 0);

struct FamilyBudget {
  std::size_t max_members = 4096;
  Index indices = 4;                 // materialized coordinates / atoms
  std::size_t random_internals = 8;  // seeded internals beyond the fixed grid
  std::uint64_t seed = 0;
  std::vector<Point> extra_anchors;  // appended as internals
};

struct FunctionalFamily {
  Space space;
  std::vector<MetricFunctional> members;
  std::string coverage_note;
};

FunctionalFamily default_family(const Space& space, const FamilyBudget& budget = {});

/// The same family with every member rebased at b.
FunctionalFamily rebase_family(const FunctionalFamily& family, const Point& b);

}  // namespace dweak
