#include "mosaic/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <omp.h>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

constexpr int kMaxPoints = 16;  // columns are packed 4 bits per point
constexpr int kMaxColors = 15;

using Packed = std::uint64_t;

Packed pack(const std::vector<Color>& x) {
  Packed key = 0;
  for (std::size_t p = 0; p < x.size(); ++p) key |= static_cast<Packed>(x[p]) << (4 * p);
  return key;
}

// (g . x)(alpha(p)) = gamma(x(p)); the diagonal color 0 is fixed.
std::vector<Color> act(const GroupGenerator& g, const std::vector<Color>& x) {
  std::vector<Color> out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p)
    out[g.alpha(static_cast<int>(p))] = x[p] == 0 ? Color{0} : static_cast<Color>(g.gamma(x[p] - 1) + 1);
  return out;
}

bool diagonal_mode(const SearchProblem& problem) {
  return problem.mode == SearchMode::symmetric_diagonal;
}

// Cell indexing: pair cells (p < q, color 1..c) first, then zero cells.
struct CellIndex {
  int v = 0;
  int c = 0;
  bool zeros = false;
  std::vector<int> pair_base;  // pair_base[p] = index of pair (p, p+1)

  explicit CellIndex(int v_, int c_, bool zeros_) : v(v_), c(c_), zeros(zeros_) {
    int next = 0;
    pair_base.resize(v);
    for (int p = 0; p < v; ++p) {
      pair_base[p] = next;
      next += v - p - 1;
    }
  }
  int pairs() const { return v * (v - 1) / 2; }
  int size() const { return pairs() * c + (zeros ? v : 0); }
  int pair_cell(int p, int q, int color) const {
    if (p > q) std::swap(p, q);
    return (pair_base[p] + (q - p - 1)) * c + (color - 1);
  }
  int zero_cell(int p) const { return pairs() * c + p; }
};

}  // namespace

void validate_problem(const SearchProblem& problem) {
  const auto& params = problem.params;
  params.validate();
  if (diagonal_mode(problem) != params.diagonal_zero)
    throw PreconditionError("search: symmetric mode goes with diagonal-zero parameters and vice versa");
  if (!problem.allow_degenerate && !params.nontrivial())
    throw PreconditionError("search: at least three colors of strength >= 2 are required");
  for (const auto& p : params.colors)
    if (p.t != 2) throw PreconditionError("search: only strength-2 colors are supported");
  if (params.v > kMaxPoints) throw PreconditionError("search: at most 16 points are supported");
  if (params.c() > kMaxColors) throw PreconditionError("search: at most 15 colors are supported");
  for (const auto& g : problem.generators) {
    if (g.alpha.size() != params.v || g.gamma.size() != params.c())
      throw PreconditionError("search: generator does not act on " + std::to_string(params.v) +
                              " points and " + std::to_string(params.c()) + " colors");
    for (int i = 0; i < params.c(); ++i)
      if (params.colors[g.gamma(i)] != params.colors[i])
        throw PreconditionError("search: gamma maps color " + std::to_string(i + 1) + " (" +
                                params.colors[i].to_string() + ") to color " +
                                std::to_string(g.gamma(i) + 1) + " (" +
                                params.colors[g.gamma(i)].to_string() +
                                "); the group does not act on valid columns");
  }
}

std::vector<ColoredColumn> orbit_members(const SearchProblem& problem, const ColoredColumn& rep) {
  std::vector<ColoredColumn> members{rep};
  std::unordered_set<Packed> seen{pack(rep.assignment)};
  for (std::size_t x = 0; x < members.size(); ++x)
    for (const auto& g : problem.generators) {
      ColoredColumn next{act(g, members[x].assignment)};
      if (seen.insert(pack(next.assignment)).second) members.push_back(std::move(next));
    }
  return members;
}

OrbitTable enumerate_column_orbits(const SearchProblem& problem) {
  validate_problem(problem);
  const auto& params = problem.params;
  const int v = params.v;
  const int c = params.c();
  const bool zeros = diagonal_mode(problem);
  OrbitTable table;

  {
    std::vector<PermutationTriple> gens;
    for (const auto& g : problem.generators) gens.push_back({g.alpha, Permutation(1), g.gamma});
    table.group_order = group_closure(gens, v, 1, c).size();
  }

  // Cell orbits, numbered by their least cell.
  const CellIndex index(v, c, zeros);
  std::vector<int> cell_orbit(index.size(), -1);
  auto cell_of = [&](const Cell& cell) {
    return cell.color == 0 ? index.zero_cell(cell.first)
                           : index.pair_cell(cell.first, cell.second, cell.color);
  };
  auto image = [&](const GroupGenerator& g, const Cell& cell) {
    Cell out{g.alpha(cell.first), g.alpha(cell.second), cell.color};
    if (cell.color != 0) out.color = static_cast<Color>(g.gamma(cell.color - 1) + 1);
    if (out.first > out.second) std::swap(out.first, out.second);
    return out;
  };
  auto add_orbit = [&](const Cell& start) {
    if (cell_orbit[cell_of(start)] >= 0) return;
    const int id = static_cast<int>(table.cells.size());
    std::vector<Cell> queue{start};
    cell_orbit[cell_of(start)] = id;
    for (std::size_t x = 0; x < queue.size(); ++x)
      for (const auto& g : problem.generators) {
        const Cell next = image(g, queue[x]);
        if (cell_orbit[cell_of(next)] < 0) {
          cell_orbit[cell_of(next)] = id;
          queue.push_back(next);
        }
      }
    table.cells.push_back(start);
    table.cell_sizes.push_back(queue.size());
    table.cell_targets.push_back(start.color == 0 ? 1 : params.colors[start.color - 1].lambda);
  };
  for (int p = 0; p < v; ++p)
    for (int q = p + 1; q < v; ++q)
      for (int color = 1; color <= c; ++color) add_orbit({p, q, static_cast<Color>(color)});
  if (zeros)
    for (int p = 0; p < v; ++p) add_orbit({p, p, 0});

  // Colored columns in lexicographic order; the first member met is the least.
  std::vector<int> remaining(c + 1, 0);
  remaining[0] = zeros ? 1 : 0;
  for (int i = 0; i < c; ++i) remaining[i + 1] = params.colors[i].k;
  std::unordered_set<Packed> visited;
  std::vector<Color> column(v);
  std::vector<int> tally(table.cells.size(), 0);

  auto record = [&](const std::vector<Color>& rep) {
    const auto members = orbit_members(problem, ColoredColumn{rep});
    std::vector<int> touched;
    for (const auto& m : members) {
      visited.insert(pack(m.assignment));
      const auto& x = m.assignment;
      for (int p = 0; p < v; ++p) {
        if (x[p] == 0) {
          const int o = cell_orbit[index.zero_cell(p)];
          if (tally[o]++ == 0) touched.push_back(o);
          continue;
        }
        for (int q = p + 1; q < v; ++q)
          if (x[q] == x[p]) {
            const int o = cell_orbit[index.pair_cell(p, q, x[p])];
            if (tally[o]++ == 0) touched.push_back(o);
          }
      }
    }
    std::sort(touched.begin(), touched.end());
    ColumnOrbit orbit{ColoredColumn{rep}, members.size(), {}};
    for (int o : touched) {
      if (tally[o] % static_cast<int>(table.cell_sizes[o]) != 0)
        throw InternalError("enumerate_column_orbits: uneven coverage inside a cell orbit");
      orbit.contributions.emplace_back(o, tally[o] / static_cast<int>(table.cell_sizes[o]));
      tally[o] = 0;
    }
    table.orbits.push_back(std::move(orbit));
  };

  auto fill = [&](auto& self, int p) -> void {
    if (p == v) {
      if (!visited.count(pack(column))) record(column);
      return;
    }
    for (int color = 0; color <= c; ++color) {
      if (remaining[color] == 0) continue;
      --remaining[color];
      column[p] = static_cast<Color>(color);
      self(self, p + 1);
      ++remaining[color];
    }
  };
  fill(fill, 0);
  return table;
}

CoverProblem selection_problem(const SearchProblem& problem, const OrbitTable& table) {
  const bool zeros = diagonal_mode(problem);
  CoverProblem cp;
  cp.targets = table.cell_targets;
  const int length_item = static_cast<int>(cp.targets.size());
  if (!zeros) cp.targets.push_back(static_cast<Count>(problem.params.b));
  for (const auto& orbit : table.orbits) {
    std::vector<CoverEntry> row;
    for (auto [item, coef] : orbit.contributions) row.push_back({item, coef});
    if (!zeros) row.push_back({length_item, static_cast<int>(orbit.length)});
    cp.rows.push_back(std::move(row));
    cp.multiplicity.push_back(zeros ? 1 : static_cast<int>(problem.params.b / orbit.length));
  }
  return cp;
}

namespace {

Realization realize(const SearchProblem& problem, const OrbitTable& table,
                    const CoverSolution& selection) {
  const int v = problem.params.v;
  const int b = problem.params.b;
  const int c = problem.params.c();
  std::vector<Color> entries(static_cast<std::size_t>(v) * b, 0);
  std::vector<std::vector<int>> betas(problem.generators.size(), std::vector<int>(b, -1));
  std::vector<char> filled(b, 0);
  int next = 0;
  auto put = [&](int col, const std::vector<Color>& x) {
    if (col < 0 || col >= b || filled[col])
      throw InternalError("search: selected orbits do not tile the columns");
    filled[col] = 1;
    for (int p = 0; p < v; ++p) entries[static_cast<std::size_t>(p) * b + col] = x[p];
  };
  for (int row : selection) {
    const auto members = orbit_members(problem, table.orbits[row].representative);
    if (diagonal_mode(problem)) {
      for (const auto& m : members) {
        const auto zero = std::find(m.assignment.begin(), m.assignment.end(), Color{0});
        put(static_cast<int>(zero - m.assignment.begin()), m.assignment);
      }
      continue;
    }
    std::unordered_map<Packed, int> position;
    for (std::size_t x = 0; x < members.size(); ++x) {
      position[pack(members[x].assignment)] = next + static_cast<int>(x);
      put(next + static_cast<int>(x), members[x].assignment);
    }
    for (std::size_t g = 0; g < problem.generators.size(); ++g)
      for (std::size_t x = 0; x < members.size(); ++x)
        betas[g][next + x] = position.at(pack(act(problem.generators[g], members[x].assignment)));
    next += static_cast<int>(members.size());
  }
  if (std::find(filled.begin(), filled.end(), 0) != filled.end())
    throw InternalError("search: selected orbits leave columns empty");

  Realization out{Mosaic(v, b, c, problem.params.diagonal_zero, std::move(entries)), {}};
  for (std::size_t g = 0; g < problem.generators.size(); ++g) {
    const auto& gen = problem.generators[g];
    Permutation beta = diagonal_mode(problem) ? gen.alpha : Permutation(std::move(betas[g]));
    out.automorphisms.push_back({gen.alpha, std::move(beta), gen.gamma});
  }
  return out;
}

SearchResult deduplicate(std::vector<Realization> found, int threads, bool transposition,
                         SearchStats stats) {
  std::vector<Mosaic> mosaics;
  mosaics.reserve(found.size());
  for (const auto& r : found) mosaics.push_back(r.mosaic);
  const auto keys = canonical_forms(mosaics, threads, transposition);
  SearchResult result;
  std::set<Mosaic> seen;
  for (std::size_t x = 0; x < found.size(); ++x) {
    if (!seen.insert(keys[x]).second) continue;
    result.mosaics.push_back(std::move(found[x].mosaic));
    result.automorphisms.push_back(std::move(found[x].automorphisms));
  }
  stats.unique = result.mosaics.size();
  result.stats = stats;
  return result;
}

}  // namespace

std::vector<Realization> solve_selections(const SearchProblem& problem, const SearchOptions& options,
                                          SearchStats* stats) {
  const OrbitTable table = enumerate_column_orbits(problem);
  const CoverProblem cp = selection_problem(problem, table);
  CoverStats cover_stats;
  const auto selections =
      solve_cover(cp, CoverOptions{options.limit, options.threads, 256}, &cover_stats);

  std::vector<Realization> out(selections.size());
  std::vector<std::string> errors(selections.size());
  const int n = static_cast<int>(selections.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(options.threads, 1))
  for (int x = 0; x < n; ++x) {
    try {
      out[x] = realize(problem, table, selections[x]);
      if (!verify_mosaic(out[x].mosaic, problem.params).pass)
        throw InternalError("search: emitted mosaic fails verification");
      for (const auto& t : out[x].automorphisms)
        if (!verify_automorphism(out[x].mosaic, t))
          throw InternalError("search: emitted mosaic does not admit " + t.to_string());
    } catch (const std::exception& e) {
      errors[x] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InternalError(e);
  if (stats) {
    stats->orbits = table.orbits.size();
    stats->nodes = cover_stats.nodes;
    stats->raw_solutions = out.size();
    stats->tasks = cover_stats.tasks;
  }
  return out;
}

SearchResult km_search(const SearchProblem& problem, const SearchOptions& options) {
  if (diagonal_mode(problem))
    throw PreconditionError("km_search: diagonal-zero problems go through symmetric_search");
  SearchStats stats;
  auto found = solve_selections(problem, options, &stats);
  return deduplicate(std::move(found), options.threads, false, stats);
}

SearchResult symmetric_search(const SearchProblem& problem, const SearchOptions& options) {
  if (!diagonal_mode(problem))
    throw PreconditionError("symmetric_search: problem is not in symmetric-diagonal mode");
  SearchStats stats;
  auto found = solve_selections(problem, options, &stats);
  return deduplicate(std::move(found), options.threads, true, stats);
}

std::vector<Mosaic> canonical_forms(const std::vector<Mosaic>& mosaics, int threads,
                                    bool up_to_transposition) {
  std::vector<Mosaic> out(mosaics.size());
  const int n = static_cast<int>(mosaics.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(threads, 1))
  for (int x = 0; x < n; ++x) {
    Mosaic key = canonical_form(mosaics[x]);
    if (up_to_transposition && mosaics[x].v() == mosaics[x].b()) {
      Mosaic other = canonical_form(transpose(mosaics[x]));
      if (other < key) key = std::move(other);
    }
    out[x] = std::move(key);
  }
  return out;
}

}  // namespace mosaic
