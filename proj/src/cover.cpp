#include "mosaic/cover.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <utility>

#include <omp.h>

#include "mosaic/errors.hpp"

namespace mosaic {

namespace {

// Immutable node layout shared by every worker. Nodes 0..items-1 are list
// heads; entry nodes of row r occupy [row_begin[r], row_begin[r+1]).
struct Layout {
  int items = 0;
  std::vector<std::int64_t> targets;
  std::vector<int> row_begin;
  std::vector<int> node_row;
  std::vector<int> node_item;
  std::vector<int> node_coef;
  std::vector<int> multiplicity;
  std::vector<std::uint8_t> usable;  // row fits the initial targets
  std::vector<int> init_up;
  std::vector<int> init_down;
  std::vector<int> init_size;
  std::vector<int> max_coef;  // per item, over usable rows

  int rows() const { return static_cast<int>(row_begin.size()) - 1; }
};

Layout build_layout(const CoverProblem& problem) {
  Layout L;
  L.items = static_cast<int>(problem.targets.size());
  for (Count t : problem.targets) L.targets.push_back(static_cast<std::int64_t>(t));
  const int rows = static_cast<int>(problem.rows.size());
  if (!problem.multiplicity.empty() && problem.multiplicity.size() != problem.rows.size())
    throw PreconditionError("cover: multiplicity size differs from row count");

  L.node_row.assign(L.items, -1);
  L.node_item.assign(L.items, -1);
  L.node_coef.assign(L.items, 0);
  L.row_begin.push_back(L.items);
  for (int r = 0; r < rows; ++r) {
    std::map<int, std::int64_t> merged;
    for (const CoverEntry& e : problem.rows[r]) {
      if (e.item < 0 || e.item >= L.items) throw PreconditionError("cover: item index out of range");
      if (e.coef <= 0) throw PreconditionError("cover: coefficients must be positive");
      merged[e.item] += e.coef;
    }
    for (auto [item, coef] : merged) {
      if (coef > INT_MAX) throw PreconditionError("cover: coefficient overflow");
      L.node_row.push_back(r);
      L.node_item.push_back(item);
      L.node_coef.push_back(static_cast<int>(coef));
    }
    L.row_begin.push_back(static_cast<int>(L.node_row.size()));
    const int mult = problem.multiplicity.empty() ? 1 : problem.multiplicity[r];
    if (mult < 0) throw PreconditionError("cover: negative multiplicity");
    L.multiplicity.push_back(mult);
    bool fits = mult > 0 && L.row_begin[r + 1] > L.row_begin[r];
    for (int n = L.row_begin[r]; n < L.row_begin[r + 1] && fits; ++n)
      fits = L.node_coef[n] <= L.targets[L.node_item[n]];
    L.usable.push_back(fits ? 1 : 0);
  }

  const int total = static_cast<int>(L.node_row.size());
  L.init_up.resize(total);
  L.init_down.resize(total);
  L.init_size.assign(L.items, 0);
  L.max_coef.assign(L.items, 0);
  for (int e = 0; e < L.items; ++e) L.init_up[e] = L.init_down[e] = e;
  for (int r = 0; r < rows; ++r) {
    if (!L.usable[r]) continue;
    for (int n = L.row_begin[r]; n < L.row_begin[r + 1]; ++n) {
      const int head = L.node_item[n];
      const int last = L.init_up[head];
      L.init_down[last] = n;
      L.init_up[n] = last;
      L.init_down[n] = head;
      L.init_up[head] = n;
      ++L.init_size[head];
      L.max_coef[head] = std::max(L.max_coef[head], L.node_coef[n]);
    }
  }
  return L;
}

class Search {
public:
  enum class Eval { solution, dead, branch };

  explicit Search(const Layout& layout)
      : L_(layout),
        up_(layout.init_up),
        down_(layout.init_down),
        size_(layout.init_size),
        deficit_(layout.targets),
        cap_(layout.multiplicity),
        active_(layout.usable) {}

  std::size_t mark() const { return trail_.size(); }
  const std::vector<int>& chosen() const { return chosen_; }

  Eval evaluate(int& branch_row) const {
    int best = -1;
    int best_size = INT_MAX;
    for (int e = 0; e < L_.items; ++e) {
      if (deficit_[e] == 0) continue;
      if (size_[e] == 0) return Eval::dead;
      if (size_[e] < best_size) {
        best_size = size_[e];
        best = e;
      }
    }
    if (best < 0) return Eval::solution;
    // Sum of the largest contribution each remaining row could still make.
    std::int64_t reach = 0;
    for (int n = down_[best]; n != best; n = down_[n]) {
      const std::int64_t coef = L_.node_coef[n];
      reach += coef * std::min<std::int64_t>(cap_[L_.node_row[n]], deficit_[best] / coef);
      if (reach >= deficit_[best]) break;
    }
    if (reach < deficit_[best]) return Eval::dead;
    branch_row = L_.node_row[down_[best]];
    return Eval::branch;
  }

  void include(int r) {
    trail_.push_back({Kind::include, r});
    --cap_[r];
    chosen_.push_back(r);
    const int begin = L_.row_begin[r], end = L_.row_begin[r + 1];
    for (int n = begin; n < end; ++n) deficit_[L_.node_item[n]] -= L_.node_coef[n];
    for (int n = begin; n < end; ++n) {
      const int head = L_.node_item[n];
      const std::int64_t left = deficit_[head];
      if (left >= L_.max_coef[head]) continue;
      for (int m = down_[head]; m != head;) {
        const int next = down_[m];
        if (L_.node_coef[m] > left) deactivate(L_.node_row[m]);
        m = next;
      }
    }
    if (cap_[r] == 0 && active_[r]) deactivate(r);
  }

  void exclude(int r) {
    if (active_[r]) deactivate(r);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Step step = trail_.back();
      trail_.pop_back();
      const int begin = L_.row_begin[step.row], end = L_.row_begin[step.row + 1];
      if (step.kind == Kind::deactivate) {
        for (int n = end - 1; n >= begin; --n) {
          down_[up_[n]] = n;
          up_[down_[n]] = n;
          ++size_[L_.node_item[n]];
        }
        active_[step.row] = 1;
      } else {
        for (int n = begin; n < end; ++n) deficit_[L_.node_item[n]] += L_.node_coef[n];
        ++cap_[step.row];
        chosen_.pop_back();
      }
    }
  }

private:
  enum class Kind : std::uint8_t { include, deactivate };
  struct Step {
    Kind kind;
    int row;
  };

  void deactivate(int r) {
    active_[r] = 0;
    for (int n = L_.row_begin[r]; n < L_.row_begin[r + 1]; ++n) {
      down_[up_[n]] = down_[n];
      up_[down_[n]] = up_[n];
      --size_[L_.node_item[n]];
    }
    trail_.push_back({Kind::deactivate, r});
  }

  const Layout& L_;
  std::vector<int> up_;
  std::vector<int> down_;
  std::vector<int> size_;
  std::vector<std::int64_t> deficit_;
  std::vector<int> cap_;
  std::vector<std::uint8_t> active_;
  std::vector<Step> trail_;
  std::vector<int> chosen_;
};

CoverSolution sorted_solution(const std::vector<int>& chosen) {
  CoverSolution s = chosen;
  std::sort(s.begin(), s.end());
  return s;
}

// Binary include/exclude DFS with an explicit stack (exclusion chains can be
// as long as the row count). Leaves the search state as it found it. Stops
// early once task `index` lies past `*cutoff`.
void run_dfs(Search& search, std::size_t limit, std::vector<CoverSolution>& out, Count& nodes,
             const std::atomic<int>* cutoff = nullptr, int index = 0) {
  struct Frame {
    int row;
    std::size_t mark;
    bool excluded;
  };
  const std::size_t base = search.mark();
  std::vector<Frame> stack;
  bool descend = true;
  while (true) {
    if (descend) {
      if (cutoff && index > cutoff->load(std::memory_order_relaxed)) break;
      ++nodes;
      int row = -1;
      const auto ev = search.evaluate(row);
      if (ev == Search::Eval::solution) {
        out.push_back(sorted_solution(search.chosen()));
        if (limit != 0 && out.size() >= limit) break;
      } else if (ev == Search::Eval::branch) {
        stack.push_back({row, search.mark(), false});
        search.include(row);
        continue;
      }
    }
    descend = false;
    while (!stack.empty()) {
      Frame& f = stack.back();
      search.undo(f.mark);
      if (!f.excluded) {
        f.excluded = true;
        search.exclude(f.row);
        descend = true;
        break;
      }
      stack.pop_back();
    }
    if (!descend) break;
  }
  search.undo(base);
}

struct Decision {
  int row;
  bool include;
};

void replay(Search& search, const std::vector<Decision>& path) {
  for (const Decision& d : path) {
    if (d.include)
      search.include(d.row);
    else
      search.exclude(d.row);
  }
}

}  // namespace

std::vector<CoverSolution> solve_cover_serial(const CoverProblem& problem, std::size_t limit,
                                              CoverStats* stats) {
  const Layout layout = build_layout(problem);
  Search search(layout);
  std::vector<CoverSolution> out;
  Count nodes = 0;
  run_dfs(search, limit, out, nodes);
  if (stats) *stats = {nodes, out.size(), 0};
  return out;
}

std::vector<CoverSolution> solve_cover(const CoverProblem& problem, const CoverOptions& options,
                                       CoverStats* stats) {
  if (options.threads <= 1) return solve_cover_serial(problem, options.limit, stats);

  const Layout layout = build_layout(problem);

  // Frontier: tasks and early solutions, kept in serial visiting order.
  struct Item {
    std::vector<Decision> path;
    bool solved = false;
    CoverSolution solution;
  };
  std::vector<Item> frontier(1);
  Count nodes = 0;
  {
    Search search(layout);
    bool grew = true;
    while (grew) {
      const auto open = std::count_if(frontier.begin(), frontier.end(),
                                      [](const Item& it) { return !it.solved; });
      if (static_cast<std::size_t>(open) >= options.frontier || open == 0) break;
      grew = false;
      std::vector<Item> next;
      for (Item& item : frontier) {
        if (item.solved) {
          next.push_back(std::move(item));
          continue;
        }
        const std::size_t base = search.mark();
        replay(search, item.path);
        ++nodes;
        int row = -1;
        const auto ev = search.evaluate(row);
        if (ev == Search::Eval::solution) {
          next.push_back({{}, true, sorted_solution(search.chosen())});
        } else if (ev == Search::Eval::branch) {
          Item inc{item.path, false, {}};
          inc.path.push_back({row, true});
          Item exc{std::move(item.path), false, {}};
          exc.path.push_back({row, false});
          next.push_back(std::move(inc));
          next.push_back(std::move(exc));
          grew = true;
        }
        search.undo(base);
      }
      frontier = std::move(next);
    }
  }

  std::vector<std::vector<CoverSolution>> results(frontier.size());
  std::vector<Count> task_nodes(frontier.size(), 0);
  const int count = static_cast<int>(frontier.size());

  // With a limit, once the finished prefix of tasks holds `limit` solutions
  // every later task is moot; `cutoff` is the last task still needed.
  std::atomic<int> cutoff{INT_MAX};
  std::vector<char> done(frontier.size(), 0);
  int prefix = 0;
  std::size_t prefix_solutions = 0;
  auto finish = [&](int i) {
    if (options.limit == 0) return;
#pragma omp critical(mosaic_cover_prefix)
    {
      done[i] = 1;
      while (cutoff.load() == INT_MAX && prefix < count && done[prefix]) {
        prefix_solutions += frontier[prefix].solved ? 1 : results[prefix].size();
        if (prefix_solutions >= options.limit) cutoff.store(prefix);
        ++prefix;
      }
    }
  };

#pragma omp parallel num_threads(options.threads)
  {
    Search local(layout);
#pragma omp for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
      if (!frontier[i].solved && i <= cutoff.load(std::memory_order_relaxed)) {
        const std::size_t base = local.mark();
        replay(local, frontier[i].path);
        run_dfs(local, options.limit, results[i], task_nodes[i], &cutoff, i);
        local.undo(base);
      }
      finish(i);
    }
  }

  // Tasks past the cutoff may have stopped part way; only the prefix counts.
  const int last = std::min(count - 1, cutoff.load());
  std::vector<CoverSolution> out;
  std::size_t tasks = 0;
  for (int i = 0; i <= last; ++i) {
    nodes += task_nodes[i];
    if (frontier[i].solved) {
      out.push_back(std::move(frontier[i].solution));
    } else {
      ++tasks;
      for (auto& s : results[i]) out.push_back(std::move(s));
    }
  }
  if (options.limit != 0 && out.size() > options.limit) out.resize(options.limit);
  if (stats) *stats = {nodes, out.size(), tasks};
  return out;
}

std::vector<CoverSolution> exact_cover(std::span<const std::vector<int>> rows,
                                       std::span<const Count> targets,
                                       std::span<const int> multiplicity, std::size_t limit) {
  CoverProblem problem;
  problem.targets.assign(targets.begin(), targets.end());
  problem.multiplicity.assign(multiplicity.begin(), multiplicity.end());
  problem.rows.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<CoverEntry> entries;
    entries.reserve(row.size());
    for (int col : row) entries.push_back({col, 1});
    problem.rows.push_back(std::move(entries));
  }
  return solve_cover_serial(problem, limit);
}

}  // namespace mosaic
