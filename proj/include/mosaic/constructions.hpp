#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mosaic/designs.hpp"
#include "mosaic/mosaic.hpp"

namespace mosaic {

/// Ordered difference families over Z_n, one per color, s components each.
/// base[i][j] is the j-th base block of color i, sorted, values in 0..n-1.
struct DifferenceFamily {
  int n = 0;
  int s = 0;
  std::vector<std::vector<std::vector<int>>> base;

  int c() const { return static_cast<int>(base.size()); }
  friend bool operator==(const DifferenceFamily&, const DifferenceFamily&) = default;
};

struct FamilyReport {
  bool pass = false;
  bool partition_ok = false;
  /// The components partition Z_n \ {0} (s == 1): the family is a tiling by
  /// difference sets and develops to a diagonal-zero mosaic.
  bool tiling = false;
  std::vector<bool> color_ok;
  /// Coverage of each nonzero difference, per color (index 0 unused).
  std::vector<std::vector<Count>> differences;
  std::string failure;
};

/// Checks the partition and difference-coverage conditions. The lambdas
/// are taken from the family itself (coverage of difference 1).
FamilyReport validate_family(const DifferenceFamily& f);
/// Same checks, against declared parameters. Throws PreconditionError on
/// mismatched n, c or b.
FamilyReport validate_family(const DifferenceFamily& f, const MosaicParameters& params);

/// Parameters the family develops to.
MosaicParameters family_parameters(const DifferenceFamily& f);

/// Column j*n + g gives point p color i+1 iff p - g lies in base[i][j]
/// (mod n). Tilings put zeros on the diagonal. Throws PreconditionError if
/// validate_family fails.
Mosaic develop(const DifferenceFamily& f);

/// Development of base blocks of a single design over Z_n, translates in
/// order g = 0..n-1, base blocks concatenated.
Design develop_blocks(int n, const std::vector<std::vector<int>>& base);

/// Lines of the affine plane over Z_p (p prime): a resolvable 2-(p^2,p,1)
/// design. Points (x, y) are numbered x*p + y.
Design affine_plane(int p);

/// c = v/k colors; within each parallel class sorted by smallest point, the
/// column of block B_i gives color ((j - i) mod c) + 1 to the points of B_j.
/// Color class 1 equals the input design block for block. Throws
/// PreconditionError if the resolution is invalid.
Mosaic from_resolution(const Design& design, const Resolution& resolution);

}  // namespace mosaic
