#include "mosaic/constructions.hpp"

#include <algorithm>

#include "mosaic/errors.hpp"

namespace mosaic {

FamilyReport validate_family(const DifferenceFamily& f) {
  FamilyReport report;
  const int n = f.n;
  if (n <= 0 || f.s <= 0 || f.base.empty())
    throw PreconditionError("difference family: n, s and c must be positive");
  for (const auto& color : f.base) {
    if (static_cast<int>(color.size()) != f.s)
      throw PreconditionError("difference family: every color needs exactly s components");
    for (const auto& block : color)
      for (int x : block)
        if (x < 0 || x >= n) throw PreconditionError("difference family: element outside Z_n");
  }

  // Partition of Z_n (or Z_n \ {0}) by every component index.
  bool partition = true, tiling = f.s == 1;
  for (int j = 0; j < f.s; ++j) {
    std::vector<int> hits(n, 0);
    for (const auto& color : f.base)
      for (int x : color[j]) ++hits[x];
    for (int x = 0; x < n; ++x) {
      if (hits[x] != 1) partition = false;
      if (hits[x] != (x == 0 ? 0 : 1)) tiling = false;
    }
  }
  report.tiling = tiling && !partition;
  report.partition_ok = partition || report.tiling;
  if (!report.partition_ok)
    report.failure = "components do not partition Z_" + std::to_string(n);

  report.differences.assign(f.c(), std::vector<Count>(n, 0));
  for (int i = 0; i < f.c(); ++i) {
    bool ok = true;
    const std::size_t k = f.base[i].front().size();
    for (const auto& block : f.base[i]) {
      if (block.size() != k) ok = false;
      for (int x : block)
        for (int y : block)
          if (x != y) ++report.differences[i][((x - y) % n + n) % n];
    }
    for (int d = 2; d < n; ++d)
      if (report.differences[i][d] != report.differences[i][1]) ok = false;
    if (k < 2) ok = false;
    report.color_ok.push_back(ok);
    if (!ok && report.failure.empty())
      report.failure = "color " + std::to_string(i + 1) + " does not cover the nonzero differences evenly";
  }
  report.pass = report.partition_ok &&
                std::all_of(report.color_ok.begin(), report.color_ok.end(), [](bool b) { return b; });
  return report;
}

MosaicParameters family_parameters(const DifferenceFamily& f) {
  const FamilyReport report = validate_family(f);
  MosaicParameters params;
  params.v = f.n;
  params.b = f.n * f.s;
  params.diagonal_zero = report.tiling;
  for (int i = 0; i < f.c(); ++i)
    params.colors.push_back({2, f.n, static_cast<int>(f.base[i].front().size()),
                             f.n > 1 ? report.differences[i][1] : 0});
  return params;
}

FamilyReport validate_family(const DifferenceFamily& f, const MosaicParameters& params) {
  if (f.n != params.v) throw PreconditionError("difference family: n differs from v");
  if (f.c() != params.c()) throw PreconditionError("difference family: color count differs");
  if (f.n * f.s != params.b) throw PreconditionError("difference family: s * n differs from b");
  FamilyReport report = validate_family(f);
  if (report.tiling != params.diagonal_zero) {
    report.pass = false;
    if (report.failure.empty()) report.failure = "diagonal mode differs from the parameters";
  }
  for (int i = 0; i < f.c(); ++i) {
    const auto& want = params.colors[i];
    const bool match = static_cast<int>(f.base[i].front().size()) == want.k &&
                       (f.n < 2 || report.differences[i][1] == want.lambda);
    if (!match) {
      report.color_ok[i] = false;
      report.pass = false;
      if (report.failure.empty())
        report.failure = "color " + std::to_string(i + 1) + " does not develop to " + want.to_string();
    }
  }
  return report;
}

Mosaic develop(const DifferenceFamily& f) {
  const FamilyReport report = validate_family(f);
  if (!report.pass) throw PreconditionError("develop: invalid difference family: " + report.failure);
  const int n = f.n;
  const int b = n * f.s;
  std::vector<Color> entries(static_cast<std::size_t>(n) * b, 0);
  for (int i = 0; i < f.c(); ++i)
    for (int j = 0; j < f.s; ++j)
      for (int g = 0; g < n; ++g)
        for (int x : f.base[i][j]) {
          const int p = (x + g) % n;
          entries[static_cast<std::size_t>(p) * b + j * n + g] = static_cast<Color>(i + 1);
        }
  return Mosaic(n, b, f.c(), report.tiling, std::move(entries));
}

Design develop_blocks(int n, const std::vector<std::vector<int>>& base) {
  std::vector<Block> blocks;
  for (const auto& block : base)
    for (int g = 0; g < n; ++g) {
      Block b;
      for (int x : block) b.push_back(((x + g) % n + n) % n);
      blocks.push_back(std::move(b));
    }
  return Design(n, std::move(blocks));
}

Design affine_plane(int p) {
  if (p < 2) throw PreconditionError("affine_plane: order must be at least 2");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw PreconditionError("affine_plane: order must be prime");
  std::vector<Block> lines;
  for (int slope = 0; slope < p; ++slope)
    for (int icept = 0; icept < p; ++icept) {
      Block line;
      for (int x = 0; x < p; ++x) line.push_back(x * p + (slope * x + icept) % p);
      lines.push_back(std::move(line));
    }
  for (int x = 0; x < p; ++x) {
    Block line;
    for (int y = 0; y < p; ++y) line.push_back(x * p + y);
    lines.push_back(std::move(line));
  }
  return Design(p * p, std::move(lines));
}

Mosaic from_resolution(const Design& design, const Resolution& resolution) {
  if (!is_valid_resolution(design, resolution))
    throw PreconditionError("from_resolution: not a resolution of the design");
  if (design.b() == 0) throw PreconditionError("from_resolution: empty design");
  const int v = design.v();
  const int k = static_cast<int>(design.block(0).size());
  const int c = v / k;
  const int b = static_cast<int>(design.b());
  std::vector<Color> entries(static_cast<std::size_t>(v) * b, 0);
  for (auto cls : resolution.classes) {
    if (static_cast<int>(cls.size()) != c)
      throw PreconditionError("from_resolution: parallel class size differs from v/k");
    std::sort(cls.begin(), cls.end(), [&](std::size_t x, std::size_t y) {
      return design.block(x).front() < design.block(y).front();
    });
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) {
        const Color color = static_cast<Color>(((j - i) % c + c) % c + 1);
        for (int p : design.block(cls[j]))
          entries[static_cast<std::size_t>(p) * b + cls[i]] = color;
      }
  }
  return Mosaic(v, b, c, false, std::move(entries));
}

}  // namespace mosaic
