#include "mosaic/designs.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include <omp.h>

#include "mosaic/cover.hpp"
#include "mosaic/errors.hpp"

namespace mosaic {

Count binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  }
  return static_cast<Count>(r);
}

std::string DesignParameters::to_string() const {
  return std::to_string(t) + "-(" + std::to_string(v) + "," + std::to_string(k) + "," +
         std::to_string(lambda) + ")";
}

DesignParameters parse_design_parameters(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  const char* p = s.data();
  const char* end = s.data() + s.size();
  auto number = [&](auto& out) {
    auto [next, ec] = std::from_chars(p, end, out);
    if (ec != std::errc()) throw ParseError("expected a number in design parameters '" + s + "'", 0);
    p = next;
  };
  auto expect = [&](char ch) {
    if (p == end || *p != ch)
      throw ParseError(std::string("expected '") + ch + "' in design parameters '" + s + "'", 0);
    ++p;
  };
  DesignParameters params;
  number(params.t);
  expect('-');
  expect('(');
  number(params.v);
  expect(',');
  number(params.k);
  expect(',');
  number(params.lambda);
  expect(')');
  if (p != end) throw ParseError("trailing characters in design parameters '" + s + "'", 0);
  return params;
}

Admissibility admissible(const DesignParameters& params) {
  Admissibility out;
  const auto [t, v, k, lambda] = params;
  if (t < 2 || t > k || k > v) return out;
  std::vector<Count> lambdas(static_cast<std::size_t>(t) + 1);
  for (int s = 0; s <= t; ++s) {
    const unsigned __int128 num =
        static_cast<unsigned __int128>(lambda) * binomial(v - s, t - s);
    const Count den = binomial(k - s, t - s);
    if (num % den != 0) return out;
    const unsigned __int128 q = num / den;
    if (q > UINT64_MAX) return out;
    lambdas[s] = static_cast<Count>(q);
  }
  out.admissible = true;
  out.b = lambdas[0];
  out.r = lambdas[1];
  out.lambdas = std::move(lambdas);
  return out;
}

bool is_symmetric(const DesignParameters& params) {
  const auto a = admissible(params);
  return a.admissible && a.b == static_cast<Count>(params.v);
}

Design::Design(int v, std::vector<Block> blocks) : v_(v), blocks_(std::move(blocks)) {
  if (v < 0) throw PreconditionError("design: negative point count");
  for (Block& block : blocks_) {
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw PreconditionError("design: block repeats a point");
    if (!block.empty() && (block.front() < 0 || block.back() >= v))
      throw PreconditionError("design: point out of range");
  }
  incidence_.assign(static_cast<std::size_t>(v) * blocks_.size(), 0);
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    for (int p : blocks_[j]) incidence_[static_cast<std::size_t>(p) * blocks_.size() + j] = 1;
}

namespace {

// Pascal table up to n rows, used for colex ranking of t-subsets.
std::vector<std::vector<Count>> pascal(int n) {
  std::vector<std::vector<Count>> c(n + 1, std::vector<Count>(n + 2, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int t = static_cast<int>(idx.size());
  int i = t - 1;
  while (i >= 0 && idx[i] == n - t + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

}  // namespace

namespace detail {

DesignReport count_coverage(const Design& design, const DesignParameters& params) {
  const int v = design.v();
  const int t = params.t;
  if (t < 1 || t > v) throw PreconditionError("design: strength out of range");
  const Count total = binomial(v, t);
  if (total > 50'000'000) throw PreconditionError("design: too many t-subsets to count");
  const auto C = pascal(v);
  auto colex = [&](const std::vector<int>& subset) {
    Count r = 0;
    for (int i = 0; i < t; ++i) r += C[subset[i]][i + 1];
    return r;
  };

  std::vector<Count> counts(total, 0);
  std::vector<int> idx(t), subset(t);
  for (const Block& block : design.blocks()) {
    const int size = static_cast<int>(block.size());
    if (size < t) continue;
    for (int i = 0; i < t; ++i) idx[i] = i;
    do {
      for (int i = 0; i < t; ++i) subset[i] = block[idx[i]];
      ++counts[colex(subset)];
    } while (next_combination(idx, size));
  }

  DesignReport report;
  report.params = params;
  report.pass = true;
  for (int i = 0; i < t; ++i) subset[i] = i;
  do {
    const Count n = counts[colex(subset)];
    ++report.histogram[n];
    if (n != params.lambda && !report.witness) {
      report.pass = false;
      report.witness = Witness{subset, n};
    }
  } while (next_combination(subset, v));
  return report;
}

}  // namespace detail

DesignReport verify_design(const Design& design, const DesignParameters& params) {
  if (design.v() != params.v)
    throw PreconditionError("verify_design: design has " + std::to_string(design.v()) +
                            " points, parameters say " + std::to_string(params.v));
  for (std::size_t j = 0; j < design.b(); ++j)
    if (static_cast<int>(design.block(j).size()) != params.k)
      throw PreconditionError("verify_design: block " + std::to_string(j + 1) + " has size " +
                              std::to_string(design.block(j).size()) + ", expected " +
                              std::to_string(params.k));
  return detail::count_coverage(design, params);
}

std::vector<DesignReport> verify_designs(std::span<const Design> designs,
                                         std::span<const DesignParameters> params, int threads) {
  if (designs.size() != params.size())
    throw PreconditionError("verify_designs: one parameter set per design required");
  std::vector<DesignReport> out(designs.size());
  std::vector<std::string> errors(designs.size());
  const int n = static_cast<int>(designs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1))
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = verify_design(designs[i], params[i]);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw PreconditionError(e);
  return out;
}

Count complement_lambda(const DesignParameters& params) {
  const auto [t, v, k, lambda] = params;
  const unsigned __int128 num = static_cast<unsigned __int128>(lambda) * binomial(v - t, k);
  const Count den = binomial(v - t, k - t);
  if (den == 0 || num % den != 0)
    throw PreconditionError("complement: lambda is not integral for " + params.to_string());
  return static_cast<Count>(num / den);
}

std::pair<Design, DesignParameters> complement_design(const Design& design,
                                                      const DesignParameters& params) {
  if (!verify_design(design, params).pass)
    throw PreconditionError("complement: input is not a " + params.to_string() + " design");
  std::vector<Block> blocks;
  blocks.reserve(design.b());
  for (const Block& block : design.blocks()) {
    Block comp;
    std::size_t i = 0;
    for (int p = 0; p < design.v(); ++p) {
      if (i < block.size() && block[i] == p)
        ++i;
      else
        comp.push_back(p);
    }
    blocks.push_back(std::move(comp));
  }
  DesignParameters out{params.t, params.v, params.v - params.k, complement_lambda(params)};
  return {Design(design.v(), std::move(blocks)), out};
}

std::vector<Count> replication_counts(const Design& design) {
  std::vector<Count> r(design.v(), 0);
  for (const Block& block : design.blocks())
    for (int p : block) ++r[p];
  return r;
}

DesignParameters infer_design_parameters(const Design& design, int t) {
  std::map<std::size_t, Count> sizes;
  for (const Block& block : design.blocks()) ++sizes[block.size()];
  DesignParameters params{t, design.v(), 0, 0};
  Count best = 0;
  for (auto [size, n] : sizes)
    if (n > best) {
      best = n;
      params.k = static_cast<int>(size);
    }
  const DesignReport counts = detail::count_coverage(design, params);
  best = 0;
  for (auto [lambda, n] : counts.histogram)
    if (n > best) {
      best = n;
      params.lambda = lambda;
    }
  return params;
}

std::optional<Resolution> check_resolvable(const Design& design) {
  const int v = design.v();
  if (design.b() == 0) return Resolution{};
  const std::size_t k = design.block(0).size();
  if (k == 0 || v % static_cast<int>(k) != 0) return std::nullopt;
  for (const Block& block : design.blocks())
    if (block.size() != k) return std::nullopt;

  // Parallel classes: exact covers of the points by blocks.
  std::vector<Count> point_targets(v, 1);
  const auto classes = exact_cover(design.blocks(), point_targets);
  if (classes.empty()) return std::nullopt;

  // Resolution: exact cover of the block indices by parallel classes.
  std::vector<Count> block_targets(design.b(), 1);
  const auto chosen = exact_cover(classes, block_targets, {}, 1);
  if (chosen.empty()) return std::nullopt;

  Resolution res;
  for (int c : chosen.front()) {
    std::vector<std::size_t> cls(classes[c].begin(), classes[c].end());
    std::sort(cls.begin(), cls.end());
    res.classes.push_back(std::move(cls));
  }
  return res;
}

bool is_valid_resolution(const Design& design, const Resolution& resolution) {
  std::vector<int> block_uses(design.b(), 0);
  for (const auto& cls : resolution.classes) {
    std::vector<int> point_uses(design.v(), 0);
    for (std::size_t j : cls) {
      if (j >= design.b()) return false;
      ++block_uses[j];
      for (int p : design.block(j)) ++point_uses[p];
    }
    if (std::any_of(point_uses.begin(), point_uses.end(), [](int n) { return n != 1; }))
      return false;
  }
  return std::all_of(block_uses.begin(), block_uses.end(), [](int n) { return n == 1; });
}

}  // namespace mosaic
