#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mosaic/designs.hpp"

namespace mosaic {

struct CoverEntry {
  int item = 0;
  int coef = 0;  // > 0
};

/// Generalized exact cover: choose a multiset of rows (row r at most
/// multiplicity[r] times) so that, for every item e, the sum of coefficients
/// on e over the chosen rows equals targets[e] exactly.
struct CoverProblem {
  std::vector<Count> targets;
  std::vector<std::vector<CoverEntry>> rows;
  std::vector<int> multiplicity;  // empty: every row at most once
};

/// Row indices in nondecreasing order; a row chosen m times appears m times.
using CoverSolution = std::vector<int>;

struct CoverStats {
  Count nodes = 0;
  Count solutions = 0;
  std::size_t tasks = 0;  // parallel frontier size (0 for the serial path)
};

struct CoverOptions {
  std::size_t limit = 0;  // 0 = all solutions
  int threads = 1;
  std::size_t frontier = 256;  // target task count for the parallel split
};

/// Serial reference. Branches on the first remaining row of the item with
/// fewest candidate rows (lowest item index on ties): include one more copy
/// of that row, then exclude it. Every multiset is produced exactly once,
/// in a fixed order.
std::vector<CoverSolution> solve_cover_serial(const CoverProblem& problem, std::size_t limit = 0,
                                              CoverStats* stats = nullptr);

/// Splits the top of the serial search tree into independent tasks and
/// solves them with OpenMP. Output is identical to solve_cover_serial for
/// any thread count. With a limit, tasks past the first prefix that already
/// holds `limit` solutions are abandoned, and stats count only that prefix.
std::vector<CoverSolution> solve_cover(const CoverProblem& problem, const CoverOptions& options,
                                       CoverStats* stats = nullptr);

/// 0/1 convenience wrapper: rows[r] lists the columns row r covers.
std::vector<CoverSolution> exact_cover(std::span<const std::vector<int>> rows,
                                       std::span<const Count> targets,
                                       std::span<const int> multiplicity = {},
                                       std::size_t limit = 0);

}  // namespace mosaic
