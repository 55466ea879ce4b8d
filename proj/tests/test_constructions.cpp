#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "mosaic/constructions.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/symmetry.hpp"
#include "support.hpp"

using namespace mosaic;

namespace {

DifferenceFamily base_family() {
  return {13, 2, {{{0, 1, 4}, {0, 2, 7}}, {{2, 6, 7, 9}, {1, 3, 10, 11}}, {{3, 5, 8, 10, 11, 12}, {4, 5, 6, 8, 9, 12}}}};
}

// Independent check: components partition the group (or the group minus 0)
// and every color's differences are uniform.
bool family_ok(const DifferenceFamily& f, bool tiling) {
  for (int j = 0; j < f.s; ++j) {
    std::vector<int> hits(f.n, 0);
    for (const auto& color : f.base)
      for (int x : color[j]) ++hits[x];
    for (int x = 0; x < f.n; ++x)
      if (hits[x] != (tiling && x == 0 ? 0 : 1)) return false;
  }
  for (const auto& color : f.base) {
    std::vector<int> diff(f.n, 0);
    for (const auto& block : color) {
      if (block.size() < 2 || block.size() != color[0].size()) return false;
      for (int x : block)
        for (int y : block)
          if (x != y) ++diff[(x - y + f.n) % f.n];
    }
    for (int d = 1; d < f.n; ++d)
      if (diff[d] != diff[1]) return false;
  }
  return true;
}

// Every ordered partition of `ground` into sets of the given sizes.
std::vector<std::vector<std::vector<int>>> partitions(const std::vector<int>& ground, const std::vector<int>& sizes) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> parts(sizes.size());
  auto rec = [&](auto& self, std::size_t x) -> void {
    if (x == ground.size()) {
      out.push_back(parts);
      return;
    }
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      if (static_cast<int>(parts[c].size()) == sizes[c]) continue;
      parts[c].push_back(ground[x]);
      self(self, x + 1);
      parts[c].pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// All families over Z_n with s components and the given color sizes.
std::vector<DifferenceFamily> all_families(int n, int s, const std::vector<int>& sizes, bool tiling) {
  std::vector<int> ground;
  for (int x = tiling ? 1 : 0; x < n; ++x) ground.push_back(x);
  const auto parts = partitions(ground, sizes);
  std::vector<DifferenceFamily> out;
  std::vector<std::size_t> pick(s, 0);
  while (true) {
    DifferenceFamily f{n, s, std::vector<std::vector<std::vector<int>>>(sizes.size())};
    for (int j = 0; j < s; ++j)
      for (std::size_t c = 0; c < sizes.size(); ++c) f.base[c].push_back(parts[pick[j]][c]);
    out.push_back(std::move(f));
    int j = 0;
    while (j < s && ++pick[j] == parts.size()) pick[j++] = 0;
    if (j == s) break;
  }
  return out;
}

PermutationTriple cyclic_triple(int n, int s, int c) {
  std::vector<int> alpha(n), beta(n * s);
  for (int p = 0; p < n; ++p) alpha[p] = (p + 1) % n;
  for (int j = 0; j < s; ++j)
    for (int g = 0; g < n; ++g) beta[j * n + g] = j * n + (g + 1) % n;
  return {Permutation(alpha), Permutation(beta), Permutation(c)};
}

void check_develops(const DifferenceFamily& f) {
  const Mosaic m = develop(f);
  const MosaicParameters p = family_parameters(f);
  CHECK(verify_mosaic(m, p).pass);
  CHECK(verify_automorphism(m, cyclic_triple(f.n, f.s, f.c())));
}

}  // namespace

TEST_CASE("the 13-point families develop to the first fixture") {
  const DifferenceFamily f = base_family();
  const FamilyReport report = validate_family(f, parse_mosaic_parameters("2-(13,3,1)+2-(13,4,2)+2-(13,6,5)"));
  CHECK(report.pass);
  CHECK(report.partition_ok);
  CHECK_FALSE(report.tiling);
  const Mosaic m = develop(f);
  CHECK(m == support::fixture_mosaic("cyclic13"));
  CHECK(color_class(m, 1).block(0) == Block{0, 1, 4});
  check_develops(f);
}

TEST_CASE("swapping components exchanges the column halves") {
  DifferenceFamily f = base_family();
  for (auto& color : f.base) std::swap(color[0], color[1]);
  const Mosaic a = develop(f);
  const Mosaic t1 = support::fixture_mosaic("cyclic13");
  for (int i = 0; i < 13; ++i)
    for (int j = 0; j < 26; ++j) CHECK(a.at(i, j) == t1.at(i, (j + 13) % 26));
}

TEST_CASE("broken families fail validation") {
  DifferenceFamily f = base_family();
  f.base[0][0] = {0, 1, 2};
  FamilyReport r = validate_family(f);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.color_ok[0]);
  CHECK(r.differences[0][1] == 2);
  CHECK_THROWS_AS(develop(f), PreconditionError);

  // Overlapping single-component sets cannot partition Z_7.
  const DifferenceFamily overlap{7, 1, {{{0, 1, 3}}, {{2, 4, 5, 6}}, {{0, 1}}}};
  r = validate_family(overlap);
  CHECK_FALSE(r.partition_ok);
  CHECK_FALSE(r.pass);

  CHECK_THROWS_AS(validate_family(base_family(), parse_mosaic_parameters("2-(9,3,2)+2-(9,3,2)+2-(9,3,2)")),
                  PreconditionError);
}

TEST_CASE("a Z_7 tiling develops to a diagonal-zero mosaic") {
  const DifferenceFamily f = io::parse_family(support::fixture_text("fano_tiling.df"));
  const FamilyReport r = validate_family(f);
  CHECK(r.pass);
  CHECK(r.tiling);
  const Mosaic m = develop(f);
  CHECK(m.diagonal_zero());
  CHECK(verify_mosaic(m, parse_mosaic_parameters("2-(7,3,1)+2-(7,3,1)+2-(7,1,0)")).pass);
  CHECK(verify_automorphism(m, cyclic_triple(7, 1, 2)));
}

TEST_CASE("exhaustive small families: validation matches the oracle and develop verifies") {
  struct Case {
    int n, s;
    std::vector<int> sizes;
    bool tiling;
  };
  const Case cases[] = {
      {5, 2, {2, 3}, false},
      {7, 1, {3, 4}, false},
      {7, 3, {2, 5}, false},
      {7, 1, {3, 3}, true},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.s);
    int valid = 0;
    for (const auto& f : all_families(c.n, c.s, c.sizes, c.tiling)) {
      const bool ok = family_ok(f, c.tiling);
      const FamilyReport r = validate_family(f);
      REQUIRE(r.pass == ok);
      if (!ok) continue;
      CHECK(r.tiling == c.tiling);
      check_develops(f);
      ++valid;
    }
    CHECK(valid > 0);
  }
}

TEST_CASE("Z_13 has no tiling by three (13,4,1) difference sets") {
  int valid = 0;
  for (const auto& f : all_families(13, 1, {4, 4, 4}, true)) {
    const bool ok = family_ok(f, true);
    CHECK(validate_family(f).pass == ok);
    valid += ok;
  }
  CHECK(valid == 0);
}

TEST_CASE("multipliers and component translations keep the family valid") {
  const DifferenceFamily base = base_family();
  for (int u = 1; u < 13; ++u)
    for (int t0 : {0, 5})
      for (int t1 : {0, 3, 11}) {
        DifferenceFamily f = base;
        const int shift[2] = {t0, t1};
        for (auto& color : f.base)
          for (int j = 0; j < 2; ++j) {
            for (int& x : color[j]) x = (x * u + shift[j]) % 13;
            std::sort(color[j].begin(), color[j].end());
          }
        REQUIRE(validate_family(f).pass);
        check_develops(f);
      }
}

TEST_CASE("base block development") {
  const Design fano = develop_blocks(7, {{0, 1, 3}});
  CHECK(fano.b() == 7);
  CHECK(verify_design(fano, {2, 7, 3, 1}).pass);
  CHECK(fano.block(1) == Block{1, 2, 4});
}

TEST_CASE("affine planes") {
  for (int p : {2, 3, 5}) {
    const Design d = affine_plane(p);
    CHECK(d.b() == static_cast<std::size_t>(p * p + p));
    CHECK(verify_design(d, {2, p * p, p, 1}).pass);
    const auto res = check_resolvable(d);
    REQUIRE(res);
    CHECK(res->classes.size() == static_cast<std::size_t>(p + 1));
  }
  CHECK_THROWS_AS(affine_plane(4), PreconditionError);
}

TEST_CASE("resolvable designs give homogeneous mosaics") {
  const Design inputs[] = {affine_plane(3), color_class(support::fixture_mosaic("homog9b"), 1),
                           support::fixture_design("ag23")};
  for (const Design& d : inputs) {
    const auto res = check_resolvable(d);
    REQUIRE(res);
    const Mosaic m = from_resolution(d, *res);
    const DesignParameters p = infer_design_parameters(d);
    const MosaicReport report = verify_mosaic(m);
    CHECK(report.pass);
    CHECK(m.c() == p.v / p.k);
    for (const auto& c : report.params.colors) CHECK(c == p);
    CHECK(color_class(m, 1) == d);
    for (int a = 1; a <= m.c(); ++a)
      for (int b = a + 1; b <= m.c(); ++b) CHECK(designs_isomorphic(color_class(m, a), color_class(m, b)));
  }
}

TEST_CASE("from_resolution rejects invalid resolutions") {
  const Design ag = affine_plane(3);
  Resolution res = *check_resolvable(ag);
  std::swap(res.classes[0][0], res.classes[1][0]);
  CHECK_THROWS_AS(from_resolution(ag, res), PreconditionError);
}
