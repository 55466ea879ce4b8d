#include "mosaic/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mosaic/errors.hpp"

namespace mosaic {

Permutation::Permutation(int n) : images_(std::max(n, 0)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[x]) throw PreconditionError("permutation: not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::parse_cycles(std::string_view text, int n) {
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::vector<char> used(n, 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw ParseError("cycle notation '" + std::string(text) + "': " + why, 0, i + 1);
  };
  skip_ws();
  if (i == text.size()) fail("empty");
  while (i < text.size()) {
    if (text[i] != '(') fail("expected '('");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;
      skip_ws();
      continue;
    }
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) fail("expected a point");
      const int x = std::stoi(std::string(text.substr(start, i - start)));
      if (x < 1 || x > n) fail("point " + std::to_string(x) + " outside 1.." + std::to_string(n));
      if (used[x - 1]) fail("point " + std::to_string(x) + " repeated");
      used[x - 1] = 1;
      cycle.push_back(x - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      fail("expected ',' or ')'");
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int x = 0; x < size(); ++x) inv[images_[x]] = x;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int x = 0; x < size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

bool Permutation::has_fixed_point() const {
  for (int x = 0; x < size(); ++x)
    if (images_[x] == x) return true;
  return false;
}

Count Permutation::order() const {
  Count order = 1;
  std::vector<char> seen(images_.size(), 0);
  for (int x = 0; x < size(); ++x) {
    if (seen[x]) continue;
    Count len = 0;
    for (int y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::string Permutation::to_cycles() const {
  std::string out;
  std::vector<char> seen(images_.size(), 0);
  for (int x = 0; x < size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    out += "(";
    for (int y = x; !seen[y]; y = images_[y]) {
      seen[y] = 1;
      if (y != x) out += ",";
      out += std::to_string(y + 1);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw PreconditionError("permutation: size mismatch in product");
  std::vector<int> out(a.size());
  for (int x = 0; x < a.size(); ++x) out[x] = a(b(x));
  return Permutation(std::move(out));
}

}  // namespace mosaic
