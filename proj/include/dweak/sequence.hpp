#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "dweak/point.hpp"
#include "dweak/space.hpp"

namespace dweak {

class SequenceSpec;

/// prefix, then the period repeated forever.
struct ExplicitList {
  std::vector<Point> prefix;
  std::vector<Point> period;
};

/// x_n = (scale + growth * n) e_n.
struct CoordinateBlowup {
  double scale = 1.0;
  double growth = 0.0;
};

/// Odd n -> p, even n -> q.
struct Alternating {
  Point p;
  Point q;
};

/// Bounded random terms with moving support [n + shift, n + shift + width),
/// norm uniform in [min_norm, max_norm], plus a coordinatewise-decaying part
/// decay / n on coordinates 1..decay_width. Random access in n.
struct SeededRandomBounded {
  std::uint64_t seed = 0;
  Index width = 3;
  Index shift = 0;
  double min_norm = 1.0;
  double max_norm = 2.0;
  double decay = 0.0;
  Index decay_width = 0;
};

/// Sum of terms coef(n) * point(n), coef(n) = a * n^power * ((-1)^n if
/// alternating). point(n) is a fixed point or the moving unit e_{n+offset}.
struct UserFormula {
  struct Term {
    double a = 1.0;
    int power = 0;
    bool alternating = false;
    std::optional<Point> fixed;  // absent: moving unit vector
    Index offset = 0;
  };
  std::vector<Term> terms;
};

/// x_n = Atom(offset + n).
struct DistinctAtoms {
  std::uint64_t offset = 0;
};

/// Odd n -> a((n + 1) / 2), even n -> b(n / 2).
struct Interleave {
  std::shared_ptr<const SequenceSpec> a;
  std::shared_ptr<const SequenceSpec> b;
};

/// x_n = s * a_n + t * b_n in a normed space or l_p ball.
struct Combination {
  double s = 1.0;
  std::shared_ptr<const SequenceSpec> a;
  double t = 1.0;
  std::shared_ptr<const SequenceSpec> b;
};

using Generator = std::variant<ExplicitList, CoordinateBlowup, Alternating, SeededRandomBounded,
                               UserFormula, DistinctAtoms, Interleave, Combination>;

struct PeriodicForm {
  std::vector<Point> prefix;
  std::vector<Point> period;
};

/// Lazy sequence x_1, x_2, ... in a space. Immutable.
class SequenceSpec {
 public:
  SequenceSpec(Space space, Generator generator);

  const Space& space() const noexcept { return space_; }
  const Generator& generator() const noexcept { return generator_; }

  /// The n-th term, n >= 1. No membership check.
  Point at(std::uint64_t n) const;
  /// Terms 1..count, each checked for membership.
  std::vector<Point> materialize(std::size_t count) const;

  /// Exact (prefix, period) description when the generator is eventually
  /// periodic.
  std::optional<PeriodicForm> periodic_form() const;

 private:
  Space space_;
  Generator generator_;
};

SequenceSpec interleave(const SequenceSpec& a, const SequenceSpec& b);
SequenceSpec combine(double s, const SequenceSpec& a, double t, const SequenceSpec& b);

}  // namespace dweak
