#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dweak/functional.hpp"
#include "dweak/sequence.hpp"
#include "dweak/space.hpp"

namespace dweak {

struct TesterConfig {
  std::size_t horizon = 2000;
  std::optional<std::size_t> burn_in;  // default horizon / 10
  double tol = 1e-7;
  double decay_ratio = 0.6;
  std::size_t threads = 0;  // 0: hardware concurrency

  std::size_t effective_burn_in() const;
};

/// Inclusive 1-based index range. Empty when first > last.
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;
  bool empty() const noexcept { return first > last; }
  bool contains(std::size_t n) const noexcept { return n >= first && n <= last; }
};

/// W = [burn_in, N], tail = [max(burn_in, N/2), N], early = [max(burn_in, N/4), tail.first).
struct Windows {
  Window window;
  Window early;
  Window tail;
  /// Sample indices N/4, N/2, N used for extrapolation; marks[0] is 0 when
  /// N/4 falls before the burn-in.
  std::array<std::size_t, 3> marks{};
  static Windows from(const TesterConfig& cfg);
};

enum class Outcome { Consistent, Violation, Inconclusive };
const char* outcome_name(Outcome o);

/// Maxima of an excess series e_n over the three windows. The tested
/// inequality is limsup e_n <= 0.
struct ExcessStats {
  double window_max = 0.0;
  double early_max = 0.0;  // -inf when the early window is empty
  double tail_max = 0.0;
  std::size_t argmax = 0;
  std::array<double, 3> at_marks{};  // e at Windows::marks; NaN when unavailable
  bool tail_nonincreasing = false;
};

/// Fills ExcessStats from a random-access excess series e(n).
template <class F>
ExcessStats excess_stats(const Windows& w, F&& e) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  ExcessStats s{-inf, -inf, -inf, 0};
  s.at_marks.fill(std::numeric_limits<double>::quiet_NaN());
  s.tail_nonincreasing = true;
  double prev = inf;
  for (std::size_t n = w.window.first; n <= w.window.last; ++n) {
    const double v = e(n);
    if (v > s.window_max) {
      s.window_max = v;
      s.argmax = n;
    }
    if (w.early.contains(n)) s.early_max = std::max(s.early_max, v);
    if (w.tail.contains(n)) {
      s.tail_max = std::max(s.tail_max, v);
      if (v > prev + 1e-13 * (1.0 + std::abs(prev))) s.tail_nonincreasing = false;
      prev = v;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (w.marks[k] == n) s.at_marks[k] = v;
    }
  }
  return s;
}

enum class Trend {
  Settled,       // max over the window (or the tail) is within tol
  Decaying,      // positive but shrinking: early-to-tail ratio, or a monotone tail
                 // whose extrapolated limit is within tol
  Persistent,    // positive and already attained in the tail
  Undetermined,  // none of the above
};
const char* trend_name(Trend t);

struct Classified {
  Trend trend = Trend::Settled;
  double margin = 0.0;  // Settled: -max; Decaying: 0
  double gap = 0.0;     // Persistent: window max
};

Classified classify_excess(const ExcessStats& s, const TesterConfig& cfg);

struct Verdict {
  Outcome outcome = Outcome::Consistent;
  Point candidate;
  double margin = 0.0;
  std::optional<MetricFunctional> witness;
  std::optional<std::size_t> witness_index;  // position in the family
  std::optional<Point> probe;                // Delta tests
  std::optional<std::size_t> witness_term;   // n attaining the window extremum
  double gap = 0.0;
  Window window;
  std::size_t horizon = 0;
  double tol = 0.0;
  std::string reason;
};

struct LiminfEstimate {
  double value = 0.0;  // min over [burn_in, N]
  double tail_min = 0.0;
  bool stable = false;  // tail_min - value <= tol
  std::size_t argmin = 0;
  Window window;
};

LiminfEstimate liminf_estimate(const MetricFunctional& h, const SequenceSpec& seq,
                               const TesterConfig& cfg);

/// Per-member minima of h(x_n) over the three windows, computed once so that
/// many candidates z can be tested against one sequence.
class FamilyTraces {
 public:
  FamilyTraces(FunctionalFamily family, const SequenceSpec& seq, const TesterConfig& cfg);

  struct Trace {
    double window_min = 0.0;
    double early_min = 0.0;
    double tail_min = 0.0;
    std::size_t argmin = 0;
    std::array<double, 3> at_marks{};  // h(x_n) at Windows::marks
    bool tail_nondecreasing = false;
  };

  const FunctionalFamily& family() const noexcept { return family_; }
  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const TesterConfig& config() const noexcept { return cfg_; }
  const Windows& windows() const noexcept { return windows_; }

  /// d-weak verdict at z: the first Persistent member in family order gives
  /// a Violation; otherwise any Undetermined member gives Inconclusive.
  /// Members are 1-Lipschitz, so when d(x_n, z) settles or decays every
  /// member's excess does too.
  Verdict test(const Point& z) const;

 private:
  FunctionalFamily family_;
  TesterConfig cfg_;
  Windows windows_;
  std::vector<Trace> traces_;
  std::vector<Point> terms_;
};

Verdict test_dweak(const SequenceSpec& seq, const Point& z, const FunctionalFamily& family,
                   const TesterConfig& cfg = {});

/// Excess d(z, x_n) - d(y, x_n) per probe y.
Verdict test_delta(const SequenceSpec& seq, const Point& z, const std::vector<Point>& probes,
                   const TesterConfig& cfg = {});

/// Excess d(x_n, z).
Verdict test_strong(const SequenceSpec& seq, const Point& z, const TesterConfig& cfg = {});

/// Internal anchors of the family followed by the grid, without repeats.
std::vector<Point> default_delta_probes(const FunctionalFamily& family,
                                        const std::vector<Point>& grid);

// ---------------------------------------------------------------------------
// Limit sets

enum class RegionKind { NormBall, AllPoints, Empty, Singleton };

struct RegionDescriptor {
  RegionKind kind = RegionKind::AllPoints;
  double p = 2.0;
  double radius = 0.0;
  std::optional<Point> point;
  std::string formula;

  bool contains(const Space& space, const Point& z) const;
};

/// Closed-form limit set for the sequences whose limit set is known exactly:
/// theta e_n in the unit l_2 ball and in l_1 balls, the ray members in a
/// countable subset of l_1 containing 0, and distinct atoms.
std::optional<RegionDescriptor> known_region(const SequenceSpec& seq);

struct LambdaEstimate {
  std::vector<Point> grid;
  std::vector<Verdict> verdicts;
  std::optional<RegionDescriptor> descriptor;
  std::size_t disagreements = 0;
  std::shared_ptr<const FamilyTraces> traces;

  bool agrees() const noexcept { return disagreements == 0; }
  bool member(std::size_t i) const { return verdicts.at(i).outcome == Outcome::Consistent; }
};

LambdaEstimate lambda_set(const SequenceSpec& seq, const FunctionalFamily& family,
                          const std::vector<Point>& grid, const TesterConfig& cfg = {});

/// Bisects rho in [lo, hi] for the membership boundary of rho * direction,
/// assuming lo is a member and hi is not.
double boundary_radius(const FamilyTraces& traces, const SparseVector& direction, double lo,
                       double hi, double width = 1e-10);

struct ConvexityReport {
  std::size_t pairs = 0;
  std::size_t boundary_checks = 0;
  std::vector<std::string> counterexamples;
  std::uint64_t seed = 0;
  bool ok() const noexcept { return counterexamples.empty(); }
};

/// W-convexity of the estimated limit set on sampled member pairs, and
/// membership of descriptor boundary points along member directions.
/// Throws UnsupportedSpace when the space has no W-map.
ConvexityReport check_lambda_convex_closed(const LambdaEstimate& estimate, std::size_t samples,
                                           std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Structural checks

struct GlidingHump {
  std::vector<std::size_t> indices;                     // n_p
  std::vector<std::pair<Index, Index>> blocks;          // (m_{p-1}, m_p]
  std::vector<std::pair<Index, int>> signs;             // c(m) on the blocks
  std::vector<double> values;                           // |sum_m c(m) x_{n_p}(m)|
  double certified_min = 0.0;                           // min over p >= 3
  double eps = 0.0;
  bool certified = false;                               // certified_min >= eps / 4
};

/// Throws PreconditionFailed when fewer than three blocks can be built within
/// the horizon, and UnsupportedSpace outside l_1.
GlidingHump gliding_hump(const SequenceSpec& seq, double eps, const TesterConfig& cfg = {});

enum class UniformConvexBranch { InternalViolation, StrongConvergence, Neither, PreconditionNotMet };
const char* branch_name(UniformConvexBranch b);

struct UniformConvexityReport {
  UniformConvexBranch branch = UniformConvexBranch::Neither;
  std::optional<MetricFunctional> witness;
  double gap = 0.0;
  double tail_distance = 0.0;  // max ||x_n - xhat|| over the tail
  std::size_t internals_tested = 0;
};

UniformConvexityReport uniform_convex_strong_check(const SequenceSpec& seq, const Point& xhat,
                                                   const TesterConfig& cfg = {},
                                                   std::uint64_t seed = 0,
                                                   std::size_t random_internals = 16);

enum class DiscreteCase { EventuallyConstant, TwoAccumulation, OneInfinitePoint, AllFinite };
const char* discrete_case_name(DiscreteCase c);

struct DiscreteClassification {
  DiscreteCase kind = DiscreteCase::AllFinite;
  std::optional<Atom> point;            // the limit or the single recurrent atom
  std::vector<Atom> recurrent;
  std::string lambda;                   // description of the limit set
  std::vector<Atom> candidates;
  std::vector<Verdict> verdicts;        // test_dweak per candidate
  std::size_t disagreements = 0;        // verdict vs predicted membership
};

DiscreteClassification discrete_classify(const SequenceSpec& seq, const TesterConfig& cfg = {});

/// Verdict for s x_n + t y_n at s u + t v. Throws PreconditionFailed unless
/// x_n is Consistent at u (d-weak) and y_n at v (strong).
Verdict linear_combination_check(const SequenceSpec& xs, const Point& u, const SequenceSpec& ys,
                                 const Point& v, double s, double t,
                                 const FunctionalFamily& family, const TesterConfig& cfg = {});

struct BallProbe {
  Verdict verdict;         // Internal(q) certificate
  Verdict family_verdict;  // the same candidate against the whole family
  double analytic_gap = 0.0;  // d(z, q) - r
};

/// Throws PreconditionFailed unless every term lies in B(q, r) and d(z, q) > r.
BallProbe ball_closedness_probe(const Space& space, const Point& q, double r,
                                const SequenceSpec& seq, const Point& z,
                                const FunctionalFamily& family, const TesterConfig& cfg = {});

struct DistanceBoundRow {
  Point w;
  double lhs = 0.0;     // d(z, w)
  double liminf = 0.0;  // window min of d(x_n, w)
  Trend trend = Trend::Settled;
  bool holds = false;
};

struct DistanceBoundReport {
  Outcome precondition = Outcome::Consistent;
  std::vector<DistanceBoundRow> rows;
  bool all_hold() const;
};

DistanceBoundReport liminf_distance_bound(const SequenceSpec& seq, const Point& z,
                                          const std::vector<Point>& probes,
                                          const FunctionalFamily& family,
                                          const TesterConfig& cfg = {});

struct ExploreRow {
  std::string sequence;
  Outcome outcome = Outcome::Inconclusive;
  std::string witness;
};

/// Exploratory search: tests unbounded sequences of a normed space at 0
/// against the default family. A Consistent row is evidence about the
/// family's reach, not a settled answer.
std::vector<ExploreRow> explore_unbounded(const Space& space, std::size_t count,
                                          std::uint64_t seed, const TesterConfig& cfg = {});

}  // namespace dweak
