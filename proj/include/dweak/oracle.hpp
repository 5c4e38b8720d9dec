#pragma once

#include <cstdint>
#include <vector>

#include "dweak/convergence.hpp"
#include "dweak/sequence.hpp"
#include "dweak/space.hpp"

namespace dweak {

/// Every metric functional of a finite space, as value rows over the points.
struct CompactificationTable {
  Space space;
  std::vector<std::uint64_t> anchors;     // row i is the internal at anchors[i]
  std::vector<std::vector<double>> rows;  // rows[i][x] = h_{anchors[i]}(x)
  std::vector<double> column_max;         // max_i rows[i][w]
  bool rows_distinct = false;
  bool lipschitz_exact = false;  // |h(x) - h(y)| <= d(x, y), no tolerance
  bool vanish_at_basepoint = false;
  bool max_row_matches = false;  // column_max[w] == d(o, w) exactly
};

/// Throws UnsupportedSpace off finite spaces and InvalidSpace when the
/// matrix fails the metric axioms.
CompactificationTable finite_compactification(const Space& space);

/// Exact verdict against all internals, in atom order, using the exact
/// liminf of an eventually periodic sequence (minimum over one period).
/// Throws NotEventuallyPeriodic.
Verdict brute_force_dweak(const Space& space, const SequenceSpec& seq, const Point& z);

struct IndexSchedule {
  enum class Kind { Geometric, Linear };
  Kind kind = Kind::Geometric;
  std::size_t count = 61;  // geometric: 2^0 .. 2^(count-1); linear: 1 .. count

  std::vector<std::uint64_t> indices() const;
};

struct DiagonalResult {
  std::vector<std::uint64_t> indices;  // extracted subsequence, strictly increasing
  std::vector<double> limits;          // limit value per grid point
  std::vector<double> widths;          // final bracket width per grid point
};

/// Nested refinement over the grid: for grid point k the surviving indices
/// are narrowed to a value bracket of width tol / 2^(k+1) holding the
/// majority. Throws NoStabilization when fewer than `min_remaining` indices
/// survive.
DiagonalResult diagonal_subsequence(const SequenceSpec& w, const std::vector<Point>& grid,
                                    double tol, const IndexSchedule& schedule = {},
                                    std::size_t min_remaining = 3);

struct SnowflakeLimit {
  DiagonalResult table;
  double zero_residual = 0.0;  // max |limit| over the grid
  bool escapes = false;        // |w_n| grows along the schedule
};

SnowflakeLimit snowflake_limit_check(const SequenceSpec& w, const std::vector<Point>& grid,
                                     double tol, const IndexSchedule& schedule = {});

struct CrossValidation {
  double max_residual = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  SparseVector worst_u;
  SparseVector worst_x;
};

/// max |closed form - numeric| of the l_p Busemann functional over seeded
/// (u, x) pairs.
CrossValidation busemann_cross_validate(double p, std::size_t trials, std::uint64_t seed = 0);

/// Random metric on n points: shortest paths of a complete graph with
/// integer weights in [1, max_weight]. Distances are exact integers.
Space random_finite_space(std::size_t n, Rng& rng, int max_weight = 5);

}  // namespace dweak
