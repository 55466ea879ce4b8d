#include "mosaic/mosaic.hpp"

#include <algorithm>

#include "mosaic/errors.hpp"

namespace mosaic {

std::string MosaicParameters::to_string() const {
  std::string out;
  for (const auto& p : colors) {
    if (!out.empty()) out += "+";
    out += p.to_string();
  }
  if (diagonal_zero) out += "+" + DesignParameters{2, v, 1, 0}.to_string();
  return out;
}

bool MosaicParameters::nontrivial() const {
  return c() >= 3 && std::all_of(colors.begin(), colors.end(),
                                 [](const DesignParameters& p) { return p.t >= 2; });
}

bool MosaicParameters::homogeneous() const {
  return std::all_of(colors.begin(), colors.end(),
                     [&](const DesignParameters& p) { return p == colors.front(); });
}

void MosaicParameters::validate() const {
  if (colors.empty()) throw PreconditionError("mosaic parameters: no colors");
  int sum = 0;
  for (const auto& p : colors) {
    if (p.v != v) throw PreconditionError("mosaic parameters: " + p.to_string() + " has v != " +
                                          std::to_string(v));
    const auto a = admissible(p);
    if (!a.admissible) throw PreconditionError("mosaic parameters: " + p.to_string() +
                                               " is not admissible");
    if (a.b != static_cast<Count>(b))
      throw PreconditionError("mosaic parameters: " + p.to_string() + " has " +
                              std::to_string(a.b) + " blocks, expected " + std::to_string(b));
    sum += p.k;
  }
  if (diagonal_zero) {
    if (b != v) throw PreconditionError("mosaic parameters: diagonal mode needs b == v");
    if (sum != v - 1) throw PreconditionError("mosaic parameters: block sizes must sum to v - 1");
  } else if (sum != v) {
    throw PreconditionError("mosaic parameters: block sizes must sum to v");
  }
}

MosaicParameters parse_mosaic_parameters(std::string_view text) {
  MosaicParameters out;
  std::size_t start = 0;
  std::vector<DesignParameters> terms;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::size_t end = plus == std::string_view::npos ? text.size() : plus;
    terms.push_back(parse_design_parameters(text.substr(start, end - start)));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  if (!terms.empty() && terms.back().k == 1 && terms.back().lambda == 0) {
    out.diagonal_zero = true;
    terms.pop_back();
  }
  if (terms.empty()) throw ParseError("mosaic parameters: no nontrivial color", 0);
  out.v = terms.front().v;
  const auto a = admissible(terms.front());
  if (!a.admissible)
    throw PreconditionError("mosaic parameters: " + terms.front().to_string() +
                            " is not admissible");
  out.b = static_cast<int>(a.b);
  out.colors = std::move(terms);
  return out;
}

Mosaic::Mosaic(int v, int b, int c, bool diagonal_zero, std::vector<Color> entries)
    : v_(v), b_(b), c_(c), diagonal_zero_(diagonal_zero), entries_(std::move(entries)) {
  if (v <= 0 || b <= 0) throw PreconditionError("mosaic: dimensions must be positive");
  if (c <= 0 || c > 255) throw PreconditionError("mosaic: color count out of range");
  if (entries_.size() != static_cast<std::size_t>(v) * b)
    throw PreconditionError("mosaic: entry count does not match v x b");
  if (diagonal_zero && v != b) throw PreconditionError("mosaic: diagonal mode needs a square matrix");
  for (int i = 0; i < v; ++i)
    for (int j = 0; j < b; ++j) {
      const Color x = at(i, j);
      if (x > c) throw PreconditionError("mosaic: entry out of color range");
      if (diagonal_zero && ((x == 0) != (i == j)))
        throw PreconditionError("mosaic: zeros must lie exactly on the diagonal");
      if (!diagonal_zero && x == 0) throw PreconditionError("mosaic: zero entry outside diagonal mode");
    }
}

Design color_class(const Mosaic& m, int color) {
  if (color < 1 || color > m.c())
    throw PreconditionError("color_class: color " + std::to_string(color) + " out of range 1.." +
                            std::to_string(m.c()));
  std::vector<Block> blocks(m.b());
  for (int i = 0; i < m.v(); ++i)
    for (int j = 0; j < m.b(); ++j)
      if (m.at(i, j) == color) blocks[j].push_back(i);
  return Design(m.v(), std::move(blocks));
}

Mosaic from_color_classes(std::span<const Design> classes, bool diagonal_zero) {
  if (classes.empty()) throw PreconditionError("from_color_classes: no classes");
  const int v = classes.front().v();
  const int b = static_cast<int>(classes.front().b());
  std::vector<Color> entries(static_cast<std::size_t>(v) * b, 0);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Design& d = classes[c];
    if (d.v() != v || static_cast<int>(d.b()) != b)
      throw PreconditionError("from_color_classes: classes differ in dimensions");
    for (int j = 0; j < b; ++j)
      for (int p : d.block(j)) {
        auto& cell = entries[static_cast<std::size_t>(p) * b + j];
        if (cell != 0) throw PreconditionError("from_color_classes: classes overlap");
        cell = static_cast<Color>(c + 1);
      }
  }
  return Mosaic(v, b, static_cast<int>(classes.size()), diagonal_zero, std::move(entries));
}

MosaicParameters infer_parameters(const Mosaic& m) {
  MosaicParameters params;
  params.v = m.v();
  params.b = m.b();
  params.diagonal_zero = m.diagonal_zero();
  for (int color = 1; color <= m.c(); ++color)
    params.colors.push_back(infer_design_parameters(color_class(m, color), 2));
  return params;
}

MosaicReport verify_mosaic(const Mosaic& m) { return verify_mosaic(m, infer_parameters(m)); }

MosaicReport verify_mosaic(const Mosaic& m, const MosaicParameters& params) {
  if (m.v() != params.v || m.b() != params.b)
    throw PreconditionError("verify_mosaic: matrix is " + std::to_string(m.v()) + "x" +
                            std::to_string(m.b()) + ", parameters say " + std::to_string(params.v) +
                            "x" + std::to_string(params.b));
  if (m.c() != params.c())
    throw PreconditionError("verify_mosaic: matrix has " + std::to_string(m.c()) +
                            " colors, parameters list " + std::to_string(params.c()));
  if (m.diagonal_zero() != params.diagonal_zero)
    throw PreconditionError("verify_mosaic: diagonal mode differs between matrix and parameters");

  MosaicReport report;
  report.params = params;
  report.column_partition = true;
  for (int j = 0; j < m.b() && report.column_partition; ++j) {
    std::vector<int> counts(m.c() + 1, 0);
    for (int i = 0; i < m.v(); ++i) ++counts[m.at(i, j)];
    for (int color = 1; color <= m.c(); ++color)
      if (counts[color] != params.colors[color - 1].k) {
        report.column_partition = false;
        report.column_witness = ColumnWitness{j, color, counts[color], params.colors[color - 1].k};
        break;
      }
  }
  if (m.diagonal_zero())
    for (int i = 0; i < m.v(); ++i)
      for (int j = 0; j < m.b(); ++j)
        if ((m.at(i, j) == 0) != (i == j)) report.diagonal_ok = false;

  bool colors_ok = true;
  for (int color = 1; color <= m.c(); ++color) {
    report.colors.push_back(detail::count_coverage(color_class(m, color), params.colors[color - 1]));
    colors_ok = colors_ok && report.colors.back().pass;
  }
  report.pass = report.column_partition && report.diagonal_ok && colors_ok;
  return report;
}

bool is_homogeneous(const Mosaic& m) { return infer_parameters(m).homogeneous(); }

Mosaic transpose(const Mosaic& m) {
  if (m.v() != m.b())
    throw PreconditionError("transpose: mosaic is " + std::to_string(m.v()) + "x" +
                            std::to_string(m.b()) + ", not square");
  std::vector<Color> entries(m.entries().size());
  for (int i = 0; i < m.v(); ++i)
    for (int j = 0; j < m.b(); ++j) entries[static_cast<std::size_t>(j) * m.v() + i] = m.at(i, j);
  return Mosaic(m.v(), m.b(), m.c(), m.diagonal_zero(), std::move(entries));
}

}  // namespace mosaic
