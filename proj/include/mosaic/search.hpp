#pragma once

#include <cstdint>
#include <vector>

#include "mosaic/cover.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/permutation.hpp"
#include "mosaic/symmetry.hpp"

namespace mosaic {

enum class SearchMode { general, symmetric_diagonal };

/// One prescribed automorphism: alpha on points, gamma on colors (0-based
/// indices). The column permutation is induced by the orbit layout (general
/// mode) or equal to alpha (symmetric mode).
struct GroupGenerator {
  Permutation alpha;
  Permutation gamma;
};

struct SearchProblem {
  MosaicParameters params;
  std::vector<GroupGenerator> generators;
  SearchMode mode = SearchMode::general;
  /// Lets c < 3 instances through for smoke tests and oracles.
  bool allow_degenerate = false;
};

/// Column of the search: one color (or 0 at the diagonal position) per point.
struct ColoredColumn {
  std::vector<Color> assignment;

  friend bool operator==(const ColoredColumn&, const ColoredColumn&) = default;
  friend auto operator<=>(const ColoredColumn&, const ColoredColumn&) = default;
};

/// Coverage cell: an unordered point pair with a color, or (first == second) a
/// diagonal zero at `first` with color 0.
struct Cell {
  int first = 0;
  int second = 0;
  Color color = 0;
};

struct ColumnOrbit {
  ColoredColumn representative;  // lexicographically least member
  std::size_t length = 0;
  /// (cell orbit index, number of columns of this orbit covering the
  /// orbit's representative cell), sorted by cell orbit.
  std::vector<std::pair<int, int>> contributions;
};

struct OrbitTable {
  std::vector<ColumnOrbit> orbits;
  std::vector<Cell> cells;              // representative of each cell orbit
  std::vector<std::size_t> cell_sizes;  // size of each cell orbit
  std::vector<Count> cell_targets;      // lambda of the cell's color; 1 for zero cells
  Count group_order = 1;
};

/// Throws PreconditionError when the problem is inconsistent: bad
/// parameters, generator sizes, or a gamma mapping between colors with
/// different parameters.
void validate_problem(const SearchProblem& problem);

/// One representative per orbit of colored columns under the group, in
/// lexicographic order of representatives, with coverage bookkeeping.
OrbitTable enumerate_column_orbits(const SearchProblem& problem);

/// Members of an orbit in breadth-first order from the representative,
/// applying generators in order.
std::vector<ColoredColumn> orbit_members(const SearchProblem& problem, const ColoredColumn& rep);

/// The orbit-selection system: one row per column orbit, one item per cell
/// orbit (target lambda), plus a column-count item in general mode.
CoverProblem selection_problem(const SearchProblem& problem, const OrbitTable& table);

struct SearchOptions {
  std::size_t limit = 0;  // cap on raw selections examined; 0 = all
  int threads = 1;
};

struct SearchStats {
  std::size_t orbits = 0;
  Count nodes = 0;
  std::size_t raw_solutions = 0;
  std::size_t unique = 0;
  std::size_t tasks = 0;
};

struct SearchResult {
  /// First-found representative of each class, in search order.
  std::vector<Mosaic> mosaics;
  /// Induced automorphism triples of each generator, per returned mosaic.
  std::vector<std::vector<PermutationTriple>> automorphisms;
  SearchStats stats;
};

/// A selected set of orbits laid out as a mosaic, with the triples each
/// generator induces on it.
struct Realization {
  Mosaic mosaic;
  std::vector<PermutationTriple> automorphisms;
};

/// Every selection, undeduplicated, in search order. Each is checked with
/// verify_mosaic and verify_automorphism; a failure throws InternalError.
std::vector<Realization> solve_selections(const SearchProblem& problem, const SearchOptions& options,
                                          SearchStats* stats = nullptr);

/// Prescribed-automorphism search, deduplicated by canonical form.
SearchResult km_search(const SearchProblem& problem, const SearchOptions& options);

/// Square diagonal-zero search (problem.mode must be symmetric_diagonal),
/// deduplicated up to isomorphism and transposition.
SearchResult symmetric_search(const SearchProblem& problem, const SearchOptions& options);

/// canonical_form over a batch; OpenMP-parallel when threads > 1.
std::vector<Mosaic> canonical_forms(const std::vector<Mosaic>& mosaics, int threads,
                                    bool up_to_transposition);

}  // namespace mosaic
