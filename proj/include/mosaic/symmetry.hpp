#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mosaic/designs.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/permutation.hpp"

namespace mosaic {

/// (alpha, beta, gamma) acting on points, columns and colors. gamma acts on
/// color indices 0..c-1 (color x is index x-1); the diagonal color 0 is
/// always fixed. The triple sends cell (i, j) holding x to cell
/// (alpha(i), beta(j)) holding gamma(x).
struct PermutationTriple {
  Permutation alpha;
  Permutation beta;
  Permutation gamma;

  static PermutationTriple identity(int v, int b, int c);

  PermutationTriple inverse() const;
  bool is_identity() const;
  /// "alpha=(1,2,3) beta=(1,2,3) gamma=()"
  std::string to_string() const;

  /// Component-wise product: apply(a * b, m) == apply(a, apply(b, m)).
  friend PermutationTriple operator*(const PermutationTriple& a, const PermutationTriple& b);
  friend bool operator==(const PermutationTriple&, const PermutationTriple&) = default;
  friend auto operator<=>(const PermutationTriple&, const PermutationTriple&) = default;
};

/// Image of m under t. In diagonal mode t must map the diagonal onto itself.
Mosaic apply(const PermutationTriple& t, const Mosaic& m);

/// m(alpha(i), beta(j)) == gamma(m(i, j)) for every cell.
bool verify_automorphism(const Mosaic& m, const PermutationTriple& t);

struct MosaicGroup {
  std::vector<PermutationTriple> generators;
  Count order = 1;
  /// Every element, filled when order <= kMaxEnumeratedOrder.
  std::vector<PermutationTriple> elements;

  static constexpr Count kMaxEnumeratedOrder = 10'000;
};

/// All elements generated by `generators`, in breadth-first order starting
/// from the identity. Throws PreconditionError past `limit` elements.
std::vector<PermutationTriple> group_closure(const std::vector<PermutationTriple>& generators,
                                             int v, int b, int c, std::size_t limit = 1'000'000);

/// Full automorphism group. Generators are chosen greedily in search order
/// (gamma outer, then alpha lexicographic), followed by transpositions of
/// repeated columns.
MosaicGroup automorphism_group(const Mosaic& m);

/// Canonical representative of the isomorphism class of m: the
/// lexicographically smallest matrix over color relabelings, row orders
/// compatible with a refinement invariant, and sorted columns. In diagonal
/// mode the columns are then arranged to put the zeros on the diagonal.
Mosaic canonical_form(const Mosaic& m);

/// t with apply(t, from) == to, if one exists.
std::optional<PermutationTriple> find_isomorphism(const Mosaic& from, const Mosaic& to);

bool isomorphic(const Mosaic& a, const Mosaic& b);
/// isomorphic(a, b) or isomorphic(a, transpose(b)); the second test only applies to square b.
bool isomorphic_up_to_transposition(const Mosaic& a, const Mosaic& b);

/// Point bijection and block bijection with d2.block(blocks(j)) == points(d1.block(j)).
struct DesignIsomorphism {
  Permutation points;
  Permutation blocks;
};

std::optional<DesignIsomorphism> designs_isomorphic(const Design& d1, const Design& d2);

/// True iff the automorphism group has a subgroup acting regularly on both
/// points and columns. Square mosaics only.
bool has_regular_action(const Mosaic& m);

}  // namespace mosaic
