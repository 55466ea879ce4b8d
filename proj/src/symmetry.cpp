#include "mosaic/symmetry.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "mosaic/errors.hpp"

namespace mosaic {

PermutationTriple PermutationTriple::identity(int v, int b, int c) {
  return {Permutation(v), Permutation(b), Permutation(c)};
}

PermutationTriple PermutationTriple::inverse() const {
  return {alpha.inverse(), beta.inverse(), gamma.inverse()};
}

bool PermutationTriple::is_identity() const {
  return alpha.is_identity() && beta.is_identity() && gamma.is_identity();
}

std::string PermutationTriple::to_string() const {
  return "alpha=" + alpha.to_cycles() + " beta=" + beta.to_cycles() + " gamma=" + gamma.to_cycles();
}

PermutationTriple operator*(const PermutationTriple& a, const PermutationTriple& b) {
  return {a.alpha * b.alpha, a.beta * b.beta, a.gamma * b.gamma};
}

namespace {

void check_domains(const Mosaic& m, const PermutationTriple& t) {
  if (t.alpha.size() != m.v() || t.beta.size() != m.b() || t.gamma.size() != m.c())
    throw PreconditionError("permutation triple acts on " + std::to_string(t.alpha.size()) + "x" +
                            std::to_string(t.beta.size()) + " with " +
                            std::to_string(t.gamma.size()) + " colors; mosaic is " +
                            std::to_string(m.v()) + "x" + std::to_string(m.b()) + " with " +
                            std::to_string(m.c()));
}

Color map_color(const Permutation& gamma, Color x) {
  return x == 0 ? Color{0} : static_cast<Color>(gamma(x - 1) + 1);
}

// Plain matrix used by the search routines; values in 0..colors-1.
struct Grid {
  int v = 0;
  int b = 0;
  int colors = 0;
  std::vector<Color> a;

  Color at(int i, int j) const { return a[static_cast<std::size_t>(i) * b + j]; }
};

Grid recolored(const Mosaic& m, const Permutation& gamma) {
  Grid g{m.v(), m.b(), m.c() + 1, m.entries()};
  for (Color& x : g.a) x = map_color(gamma, x);
  return g;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.emplace_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Enumerates the pairs (alpha, beta) with to(alpha(i), beta(j)) == from(i, j).
// Rows of `from` are mapped in order; after each assignment the columns on
// both sides are partitioned by their mapped prefix, and the partitions must
// match class by class. Columns equal in full are paired in index order.
class RowMapSearch {
public:
  RowMapSearch(const Grid& from, const Grid& to) : from_(from), to_(to) {}

  template <class Leaf>
  bool run(Leaf&& leaf) {
    if (from_.v != to_.v || from_.b != to_.b) return false;
    alpha_.assign(from_.v, -1);
    used_.assign(from_.v, 0);
    std::vector<int> cs(from_.b, 0), ct(to_.b, 0);
    return dfs(0, cs, ct, 1, leaf);
  }

private:
  template <class Leaf>
  bool dfs(int i, const std::vector<int>& cs, const std::vector<int>& ct, int classes, Leaf& leaf) {
    const int C = from_.colors;
    if (i == from_.v) {
      std::vector<std::vector<int>> src(classes), dst(classes);
      for (int j = 0; j < from_.b; ++j) src[cs[j]].push_back(j);
      for (int j = 0; j < to_.b; ++j) dst[ct[j]].push_back(j);
      std::vector<int> beta(from_.b);
      for (int k = 0; k < classes; ++k)
        for (std::size_t x = 0; x < src[k].size(); ++x) beta[src[k][x]] = dst[k][x];
      return leaf(Permutation(alpha_), Permutation(std::move(beta)));
    }
    std::vector<int> src_counts(static_cast<std::size_t>(classes) * C, 0);
    for (int j = 0; j < from_.b; ++j) ++src_counts[cs[j] * C + from_.at(i, j)];
    std::vector<int> counts(src_counts.size());
    std::vector<int> ids(src_counts.size());
    std::vector<int> ns(from_.b), nt(to_.b);
    for (int r = 0; r < to_.v; ++r) {
      if (used_[r]) continue;
      counts = src_counts;
      bool ok = true;
      for (int j = 0; j < to_.b && ok; ++j) ok = --counts[ct[j] * C + to_.at(r, j)] >= 0;
      if (!ok) continue;
      int next = 0;
      for (std::size_t key = 0; key < src_counts.size(); ++key)
        ids[key] = src_counts[key] > 0 ? next++ : -1;
      for (int j = 0; j < from_.b; ++j) ns[j] = ids[cs[j] * C + from_.at(i, j)];
      for (int j = 0; j < to_.b; ++j) nt[j] = ids[ct[j] * C + to_.at(r, j)];
      used_[r] = 1;
      alpha_[i] = r;
      const bool stop = dfs(i + 1, ns, nt, next, leaf);
      used_[r] = 0;
      if (stop) return true;
    }
    return false;
  }

  const Grid& from_;
  const Grid& to_;
  std::vector<int> alpha_;
  std::vector<char> used_;
};

// Smallest matrix over row orders compatible with the refined row labels,
// with columns sorted inside their refined column classes.
class Canonizer {
public:
  explicit Canonizer(const Grid& g) : g_(g) {}

  std::vector<Color> run() {
    refine();
    pos_label_ = row_label_;
    std::sort(pos_label_.begin(), pos_label_.end());
    std::vector<int> order(g_.b);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return col_label_[x] < col_label_[y]; });
    std::vector<int> starts{0};
    for (int j = 1; j < g_.b; ++j)
      if (col_label_[order[j]] != col_label_[order[j - 1]]) starts.push_back(j);
    starts.push_back(g_.b);
    cur_.assign(g_.a.size(), 0);
    used_.assign(g_.v, 0);
    dfs(0, order, starts, false);
    return best_;
  }

private:
  // Colour refinement on the bipartite row/column incidence structure.
  void refine() {
    row_label_.assign(g_.v, 0);
    col_label_.assign(g_.b, 0);
    int nr = 1, nc = 1;
    while (true) {
      auto rank = [](std::vector<std::vector<int>>& sigs, std::vector<int>& labels) {
        std::vector<std::vector<int>> sorted = sigs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t x = 0; x < sigs.size(); ++x)
          labels[x] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[x]) -
                                       sorted.begin());
        return static_cast<int>(sorted.size());
      };
      std::vector<std::vector<int>> rs(g_.v), cs(g_.b);
      for (int i = 0; i < g_.v; ++i) {
        rs[i].push_back(row_label_[i]);
        std::vector<int> items(g_.b);
        for (int j = 0; j < g_.b; ++j) items[j] = g_.at(i, j) * nc + col_label_[j];
        std::sort(items.begin(), items.end());
        rs[i].insert(rs[i].end(), items.begin(), items.end());
      }
      for (int j = 0; j < g_.b; ++j) {
        cs[j].push_back(col_label_[j]);
        std::vector<int> items(g_.v);
        for (int i = 0; i < g_.v; ++i) items[i] = g_.at(i, j) * nr + row_label_[i];
        std::sort(items.begin(), items.end());
        cs[j].insert(cs[j].end(), items.begin(), items.end());
      }
      std::vector<int> new_rows(g_.v), new_cols(g_.b);
      const int nr2 = rank(rs, new_rows);
      const int nc2 = rank(cs, new_cols);
      row_label_ = std::move(new_rows);
      col_label_ = std::move(new_cols);
      if (nr2 == nr && nc2 == nc) break;
      nr = nr2;
      nc = nc2;
    }
  }

  void row_image(int r, const std::vector<int>& order, const std::vector<int>& starts,
                 Color* out) const {
    std::vector<int> bucket(g_.colors);
    for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
      std::fill(bucket.begin(), bucket.end(), 0);
      for (int x = starts[s]; x < starts[s + 1]; ++x) ++bucket[g_.at(r, order[x])];
      int pos = starts[s];
      for (int col = 0; col < g_.colors; ++col)
        for (int n = 0; n < bucket[col]; ++n) out[pos++] = static_cast<Color>(col);
    }
  }

  void dfs(int t, const std::vector<int>& order, const std::vector<int>& starts, bool less) {
    const int b = g_.b;
    if (t == g_.v) {
      best_ = cur_;
      ++version_;
      return;
    }
    std::vector<int> cands;
    for (int r = 0; r < g_.v; ++r)
      if (!used_[r] && row_label_[r] == pos_label_[t]) cands.push_back(r);
    std::vector<Color> images(cands.size() * b);
    std::size_t best_idx = 0;
    for (std::size_t x = 0; x < cands.size(); ++x) {
      row_image(cands[x], order, starts, images.data() + x * b);
      if (x > 0 && std::lexicographical_compare(images.begin() + x * b, images.begin() + (x + 1) * b,
                                                images.begin() + best_idx * b,
                                                images.begin() + (best_idx + 1) * b))
        best_idx = x;
    }
    const Color* minrow = images.data() + best_idx * b;
    bool child_less = less;
    if (!best_.empty() && !less) {
      const Color* ref = best_.data() + static_cast<std::size_t>(t) * b;
      const int cmp = std::memcmp(minrow, ref, b);
      if (cmp > 0) return;
      child_less = cmp < 0;
    }
    std::copy(minrow, minrow + b, cur_.begin() + static_cast<std::ptrdiff_t>(t) * b);
    std::vector<Color> minimum(minrow, minrow + b);
    std::vector<int> norder(b);
    std::vector<int> nstarts;
    for (std::size_t x = 0; x < cands.size(); ++x) {
      if (!std::equal(minimum.begin(), minimum.end(), images.begin() + x * b)) continue;
      const int r = cands[x];
      nstarts.clear();
      for (std::size_t s = 0; s + 1 < starts.size(); ++s) {
        int pos = starts[s];
        for (int col = 0; col < g_.colors; ++col) {
          const int begin = pos;
          for (int y = starts[s]; y < starts[s + 1]; ++y)
            if (g_.at(r, order[y]) == col) norder[pos++] = order[y];
          if (pos > begin) nstarts.push_back(begin);
        }
      }
      nstarts.push_back(b);
      std::copy(minimum.begin(), minimum.end(), cur_.begin() + static_cast<std::ptrdiff_t>(t) * b);
      used_[r] = 1;
      const auto seen = version_;
      dfs(t + 1, norder, nstarts, child_less);
      used_[r] = 0;
      if (version_ != seen) child_less = false;
    }
  }

  const Grid& g_;
  std::vector<int> row_label_;
  std::vector<int> col_label_;
  std::vector<int> pos_label_;
  std::vector<Color> cur_;
  std::vector<Color> best_;
  std::vector<char> used_;
  Count version_ = 0;
};

}  // namespace

Mosaic apply(const PermutationTriple& t, const Mosaic& m) {
  check_domains(m, t);
  std::vector<Color> out(m.entries().size());
  for (int i = 0; i < m.v(); ++i)
    for (int j = 0; j < m.b(); ++j)
      out[static_cast<std::size_t>(t.alpha(i)) * m.b() + t.beta(j)] = map_color(t.gamma, m.at(i, j));
  return Mosaic(m.v(), m.b(), m.c(), m.diagonal_zero(), std::move(out));
}

bool verify_automorphism(const Mosaic& m, const PermutationTriple& t) {
  check_domains(m, t);
  for (int i = 0; i < m.v(); ++i)
    for (int j = 0; j < m.b(); ++j)
      if (m.at(t.alpha(i), t.beta(j)) != map_color(t.gamma, m.at(i, j))) return false;
  return true;
}

std::vector<PermutationTriple> group_closure(const std::vector<PermutationTriple>& generators,
                                             int v, int b, int c, std::size_t limit) {
  const auto id = PermutationTriple::identity(v, b, c);
  std::vector<PermutationTriple> elements{id};
  std::set<PermutationTriple> seen{id};
  for (std::size_t x = 0; x < elements.size(); ++x) {
    for (const auto& g : generators) {
      auto next = g * elements[x];
      if (seen.insert(next).second) {
        if (elements.size() >= limit)
          throw PreconditionError("group_closure: more than " + std::to_string(limit) + " elements");
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

MosaicGroup automorphism_group(const Mosaic& m) {
  const Grid target = recolored(m, Permutation(m.c()));
  std::vector<PermutationTriple> found;
  for (const Permutation& gamma : all_permutations(m.c())) {
    const Grid source = recolored(m, gamma);
    RowMapSearch(source, target).run([&](Permutation alpha, Permutation beta) {
      found.push_back({std::move(alpha), std::move(beta), gamma});
      return false;
    });
  }

  // Identical columns: the kernel of the projection onto (alpha, gamma).
  std::map<std::vector<Color>, std::vector<int>> columns;
  for (int j = 0; j < m.b(); ++j) {
    std::vector<Color> col(m.v());
    for (int i = 0; i < m.v(); ++i) col[i] = m.at(i, j);
    columns[col].push_back(j);
  }
  std::vector<std::vector<int>> repeats;
  unsigned __int128 order = found.size();
  for (auto& [col, idx] : columns) {
    for (std::size_t x = 2; x <= idx.size(); ++x) order *= x;
    if (order > UINT64_MAX) throw PreconditionError("automorphism_group: order exceeds 64 bits");
    if (idx.size() > 1) repeats.push_back(idx);
  }
  std::sort(repeats.begin(), repeats.end());

  MosaicGroup group;
  group.order = static_cast<Count>(order);
  using Image = std::pair<Permutation, Permutation>;
  std::set<Image> closure{{Permutation(m.v()), Permutation(m.c())}};
  for (const auto& el : found) {
    if (closure.count({el.alpha, el.gamma})) continue;
    group.generators.push_back(el);
    std::vector<Image> queue(closure.begin(), closure.end());
    for (std::size_t x = 0; x < queue.size(); ++x)
      for (const auto& g : group.generators) {
        Image next{g.alpha * queue[x].first, g.gamma * queue[x].second};
        if (closure.insert(next).second) queue.push_back(std::move(next));
      }
  }
  if (closure.size() != found.size())
    throw InternalError("automorphism_group: search result is not closed under composition");
  for (const auto& idx : repeats)
    for (std::size_t x = 0; x + 1 < idx.size(); ++x) {
      std::vector<int> images(m.b());
      std::iota(images.begin(), images.end(), 0);
      std::swap(images[idx[x]], images[idx[x + 1]]);
      group.generators.push_back({Permutation(m.v()), Permutation(std::move(images)), Permutation(m.c())});
    }
  if (group.order <= MosaicGroup::kMaxEnumeratedOrder) {
    group.elements = group_closure(group.generators, m.v(), m.b(), m.c());
    if (group.elements.size() != group.order)
      throw InternalError("automorphism_group: generated group has the wrong order");
  }
  return group;
}

Mosaic canonical_form(const Mosaic& m) {
  std::vector<Color> best;
  for (const Permutation& gamma : all_permutations(m.c())) {
    const Grid g = recolored(m, gamma);
    auto candidate = Canonizer(g).run();
    if (best.empty() || candidate < best) best = std::move(candidate);
  }
  if (m.diagonal_zero()) {
    const int n = m.v();
    std::vector<Color> fixed(best.size());
    for (int i = 0; i < n; ++i) {
      int zero_col = -1;
      for (int j = 0; j < n; ++j)
        if (best[static_cast<std::size_t>(i) * n + j] == 0) zero_col = j;
      for (int r = 0; r < n; ++r)
        fixed[static_cast<std::size_t>(r) * n + i] = best[static_cast<std::size_t>(r) * n + zero_col];
    }
    best = std::move(fixed);
  }
  return Mosaic(m.v(), m.b(), m.c(), m.diagonal_zero(), std::move(best));
}

std::optional<PermutationTriple> find_isomorphism(const Mosaic& from, const Mosaic& to) {
  if (from.v() != to.v() || from.b() != to.b() || from.c() != to.c() ||
      from.diagonal_zero() != to.diagonal_zero())
    return std::nullopt;
  const Grid target = recolored(to, Permutation(to.c()));
  for (const Permutation& gamma : all_permutations(from.c())) {
    const Grid source = recolored(from, gamma);
    std::optional<PermutationTriple> out;
    RowMapSearch(source, target).run([&](Permutation alpha, Permutation beta) {
      out = PermutationTriple{std::move(alpha), std::move(beta), gamma};
      return true;
    });
    if (out) return out;
  }
  return std::nullopt;
}

bool isomorphic(const Mosaic& a, const Mosaic& b) { return find_isomorphism(a, b).has_value(); }

bool isomorphic_up_to_transposition(const Mosaic& a, const Mosaic& b) {
  if (isomorphic(a, b)) return true;
  return b.v() == b.b() && isomorphic(a, transpose(b));
}

std::optional<DesignIsomorphism> designs_isomorphic(const Design& d1, const Design& d2) {
  if (d1.v() != d2.v() || d1.b() != d2.b())
    throw PreconditionError("designs_isomorphic: designs differ in point or block count");
  auto grid = [](const Design& d) {
    Grid g{d.v(), static_cast<int>(d.b()), 2, {}};
    g.a.resize(static_cast<std::size_t>(g.v) * g.b);
    for (int p = 0; p < g.v; ++p)
      for (int j = 0; j < g.b; ++j) g.a[static_cast<std::size_t>(p) * g.b + j] = d.incident(p, j) ? 1 : 0;
    return g;
  };
  if (d1.b() == 0) return DesignIsomorphism{Permutation(d1.v()), Permutation(0)};
  const Grid from = grid(d1), to = grid(d2);
  std::optional<DesignIsomorphism> out;
  RowMapSearch(from, to).run([&](Permutation alpha, Permutation beta) {
    out = DesignIsomorphism{std::move(alpha), std::move(beta)};
    return true;
  });
  return out;
}

bool has_regular_action(const Mosaic& m) {
  if (m.v() != m.b()) throw PreconditionError("has_regular_action: mosaic is not square");
  const MosaicGroup group = automorphism_group(m);
  const Count n = static_cast<Count>(m.v());
  if (group.order < n || group.order % n != 0) return false;
  const auto elements = group.order <= MosaicGroup::kMaxEnumeratedOrder
                            ? group.elements
                            : group_closure(group.generators, m.v(), m.b(), m.c());

  // Nonidentity elements of a regular subgroup move every point and every column.
  std::vector<PermutationTriple> free;
  for (const auto& g : elements)
    if (!g.is_identity() && !g.alpha.has_fixed_point() && !g.beta.has_fixed_point())
      free.push_back(g);

  const auto id = PermutationTriple::identity(m.v(), m.b(), m.c());
  auto grow = [&](const std::vector<PermutationTriple>& base, const PermutationTriple& g,
                  std::vector<PermutationTriple>& out) {
    std::set<PermutationTriple> seen(base.begin(), base.end());
    out = base;
    if (seen.insert(g).second) out.push_back(g);
    for (std::size_t x = 0; x < out.size(); ++x)
      for (std::size_t y = 0; y <= x; ++y)
        for (const auto& p : {out[x] * out[y], out[y] * out[x]}) {
          if (seen.count(p)) continue;
          if (!p.is_identity() && (p.alpha.has_fixed_point() || p.beta.has_fixed_point()))
            return false;
          seen.insert(p);
          out.push_back(p);
          if (out.size() > n) return false;
        }
    return true;
  };
  std::function<bool(const std::vector<PermutationTriple>&, std::size_t)> search =
      [&](const std::vector<PermutationTriple>& sub, std::size_t from) {
        for (std::size_t x = from; x < free.size(); ++x) {
          if (std::find(sub.begin(), sub.end(), free[x]) != sub.end()) continue;
          std::vector<PermutationTriple> bigger;
          if (!grow(sub, free[x], bigger)) continue;
          if (bigger.size() == n) return true;
          if (search(bigger, x + 1)) return true;
        }
        return false;
      };
  return search({id}, 0);
}

}  // namespace mosaic
