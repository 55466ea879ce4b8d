#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mosaic {

using Count = std::uint64_t;

/// Exact binomial coefficient. Throws std::overflow_error past 64 bits.
Count binomial(int n, int k);

/// Parameters t-(v,k,lambda) of a block design.
struct DesignParameters {
  int t = 2;
  int v = 0;
  int k = 0;
  Count lambda = 0;

  friend bool operator==(const DesignParameters&, const DesignParameters&) = default;
  friend auto operator<=>(const DesignParameters&, const DesignParameters&) = default;

  /// "2-(13,3,1)"
  std::string to_string() const;
};

/// Parses "t-(v,k,lambda)" with optional surrounding whitespace.
DesignParameters parse_design_parameters(std::string_view text);

struct Admissibility {
  bool admissible = false;
  Count r = 0;  // replication number (lambda_1)
  Count b = 0;  // block count (lambda_0)
  /// lambda_s for s = 0..t; only filled when admissible.
  std::vector<Count> lambdas;
};

/// Checks that lambda_s = lambda * C(v-s, t-s) / C(k-s, t-s) is integral for
/// every s in 0..t. Range violations (t < 2, k > v, ...) are inadmissible.
Admissibility admissible(const DesignParameters& params);

/// True iff the parameters are admissible with b == v.
bool is_symmetric(const DesignParameters& params);

/// Block of a design: sorted, duplicate-free, 0-based points.
using Block = std::vector<int>;

/// Point set {0..v-1} with an ordered list of blocks. Repeated blocks are
/// allowed; block order is significant.
class Design {
public:
  Design() = default;
  Design(int v, std::vector<Block> blocks);

  int v() const noexcept { return v_; }
  std::size_t b() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t j) const { return blocks_.at(j); }
  bool incident(int point, std::size_t block) const {
    return incidence_[static_cast<std::size_t>(point) * blocks_.size() + block] != 0;
  }

  friend bool operator==(const Design& a, const Design& b) {
    return a.v_ == b.v_ && a.blocks_ == b.blocks_;
  }

private:
  int v_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::uint8_t> incidence_;  // v x b, row-major
};

/// First t-subset (1-based points in lexicographic order) whose coverage differs from lambda.
struct Witness {
  std::vector<int> subset;  // 0-based
  Count count = 0;
};

struct DesignReport {
  bool pass = false;
  DesignParameters params;
  std::optional<Witness> witness;
  /// coverage count -> number of t-subsets with that coverage
  std::map<Count, Count> histogram;
};

/// Counts every t-subset with block multiplicity. Throws PreconditionError
/// when v or the block sizes disagree with params.
DesignReport verify_design(const Design& design, const DesignParameters& params);

/// verify_design over many independent designs; OpenMP-parallel when threads > 1.
std::vector<DesignReport> verify_designs(std::span<const Design> designs,
                                         std::span<const DesignParameters> params, int threads);

namespace detail {
/// Same counting as verify_design but without the block-size precondition;
/// used by the mosaic verifier to report coverage on already-broken inputs.
DesignReport count_coverage(const Design& design, const DesignParameters& params);
}  // namespace detail

/// lambda * C(v-t, k) / C(v-t, k-t)
Count complement_lambda(const DesignParameters& params);

/// Set-complements every block. Requires verify_design(design, params) to pass.
std::pair<Design, DesignParameters> complement_design(const Design& design,
                                                      const DesignParameters& params);

/// Number of blocks through each point.
std::vector<Count> replication_counts(const Design& design);

/// k from the most frequent block size, lambda from the most frequent pair
/// count (smallest value on ties). Verification decides whether it is right.
DesignParameters infer_design_parameters(const Design& design, int t = 2);

/// Partition of block indices into parallel classes.
struct Resolution {
  std::vector<std::vector<std::size_t>> classes;  // each sorted ascending
};

/// Exact cover over candidate parallel classes. Deterministic; returns the
/// first resolution found, or nullopt when none exists.
std::optional<Resolution> check_resolvable(const Design& design);

/// Re-validates class disjointness, class coverage and the block partition from scratch.
bool is_valid_resolution(const Design& design, const Resolution& resolution);

}  // namespace mosaic
