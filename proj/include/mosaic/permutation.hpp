#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/designs.hpp"

namespace mosaic {

/// Bijection on {0..n-1}. Text form is 1-based cycle notation, "()" for the identity.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(int n);
  explicit Permutation(std::vector<int> images);

  /// "(1,2,3)(4,5)" on n points; unlisted points are fixed.
  static Permutation parse_cycles(std::string_view text, int n);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  bool has_fixed_point() const;
  Count order() const;
  std::string to_cycles() const;

  /// (a * b)(x) = a(b(x))
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  std::vector<int> images_;
};

}  // namespace mosaic
