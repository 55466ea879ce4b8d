#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/designs.hpp"

namespace mosaic {

/// Cell value. 1..c are colors; 0 marks the trivial diagonal color.
using Color = std::uint8_t;

/// Parameters of a mosaic: one design per nontrivial color, all on the same
/// v points and b blocks. In diagonal-zero mode the trivial 2-(v,1,0) color
/// is implicit and not listed in `colors`.
struct MosaicParameters {
  int v = 0;
  int b = 0;
  std::vector<DesignParameters> colors;
  bool diagonal_zero = false;

  int c() const { return static_cast<int>(colors.size()); }
  /// "2-(13,3,1)+2-(13,4,2)+2-(13,6,5)"; the trivial color is appended as
  /// "+2-(v,1,0)" in diagonal mode.
  std::string to_string() const;
  /// At least three colors and every strength >= 2.
  bool nontrivial() const;
  bool homogeneous() const;
  /// Throws PreconditionError unless every color is admissible with block
  /// count b and the block sizes sum to v (v - 1, with b == v, in diagonal mode).
  void validate() const;

  friend bool operator==(const MosaicParameters&, const MosaicParameters&) = default;
};

/// Parses the to_string() form. A trailing "2-(v,1,0)" term selects
/// diagonal mode. b is derived from the first color.
MosaicParameters parse_mosaic_parameters(std::string_view text);

/// v x b color matrix. Entries lie in 1..c, or in 0..c with zeros exactly on
/// the diagonal when diagonal_zero is set (then v == b).
class Mosaic {
public:
  Mosaic() = default;
  Mosaic(int v, int b, int c, bool diagonal_zero, std::vector<Color> entries);

  int v() const noexcept { return v_; }
  int b() const noexcept { return b_; }
  int c() const noexcept { return c_; }
  bool diagonal_zero() const noexcept { return diagonal_zero_; }

  Color at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * b_ + j]; }
  std::span<const Color> row(int i) const {
    return {entries_.data() + static_cast<std::size_t>(i) * b_, static_cast<std::size_t>(b_)};
  }
  const std::vector<Color>& entries() const noexcept { return entries_; }

  friend bool operator==(const Mosaic&, const Mosaic&) = default;
  friend auto operator<=>(const Mosaic&, const Mosaic&) = default;

private:
  int v_ = 0;
  int b_ = 0;
  int c_ = 0;
  bool diagonal_zero_ = false;
  std::vector<Color> entries_;
};

/// Block j is { p : m(p, j) == color }. color is 1-based.
Design color_class(const Mosaic& m, int color);

/// Inverse of color_class over all colors. Throws if the classes overlap or
/// leave a cell uncovered (the diagonal, in diagonal mode).
Mosaic from_color_classes(std::span<const Design> classes, bool diagonal_zero);

/// Most frequent block size and pair count per color (t = 2).
MosaicParameters infer_parameters(const Mosaic& m);

struct ColumnWitness {
  int column = 0;  // 0-based
  int color = 0;   // 1-based
  int count = 0;
  int expected = 0;
};

struct MosaicReport {
  bool pass = false;
  MosaicParameters params;
  bool column_partition = false;
  std::optional<ColumnWitness> column_witness;
  bool diagonal_ok = true;
  std::vector<DesignReport> colors;
};

/// Verifies against the inferred parameters.
MosaicReport verify_mosaic(const Mosaic& m);
/// Verifies against declared parameters. Throws PreconditionError on
/// dimension, color-count, or mode mismatch.
MosaicReport verify_mosaic(const Mosaic& m, const MosaicParameters& params);

/// All nontrivial colors carry identical parameters (inferred).
bool is_homogeneous(const Mosaic& m);

/// Entry-wise transpose. Square input only.
Mosaic transpose(const Mosaic& m);

}  // namespace mosaic
