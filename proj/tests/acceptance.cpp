// Acceptance gate: one line per criterion, exit status 0 iff all pass.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mosaic/constructions.hpp"
#include "mosaic/designs.hpp"
#include "mosaic/io.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/search.hpp"
#include "mosaic/symmetry.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace mosaic;

namespace {

// Runtime budgets in seconds.
constexpr double kBudget[11] = {0, 1, 1, 10, 60, 600, 1800, 3600, 1, 300, 5400};

struct Check {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

// Serial search results, kept for the determinism check.
std::map<std::string, std::vector<Mosaic>> g_serial;

const char* const kMosaics[] = {"cyclic13", "homog9a", "homog9b", "square13"};

Mosaic fixture(const char* name) { return support::fixture_mosaic(name); }

std::vector<Mosaic> serial_search(const std::string& problem_file) {
  auto it = g_serial.find(problem_file);
  if (it != g_serial.end()) return it->second;
  const SearchProblem p = io::parse_problem(support::fixture_text(problem_file));
  const SearchResult r = p.mode == SearchMode::symmetric_diagonal ? symmetric_search(p, {0, 1}) : km_search(p, {0, 1});
  return g_serial[problem_file] = r.mosaics;
}

std::string cycle_type(const Permutation& p) {
  std::vector<int> lengths;
  std::vector<char> seen(p.size(), 0);
  for (int x = 0; x < p.size(); ++x) {
    int len = 0;
    for (int y = x; !seen[y]; y = p(y)) seen[y] = 1, ++len;
    if (len) lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  std::string out;
  for (int l : lengths) out += std::to_string(l) + ",";
  return out;
}

Check cyclic13_reproduction() {
  Check c;
  const DifferenceFamily f = io::parse_family(support::fixture_text("cyclic13.df"));
  const Mosaic m = develop(f);
  c.expect(io::format_mosaic(m) == support::fixture_text("cyclic13.mosaic"), "developed matrix differs from the fixture");
  c.expect(verify_mosaic(m, parse_mosaic_parameters("2-(13,3,1)+2-(13,4,2)+2-(13,6,5)")).pass, "verify_mosaic failed");
  return c;
}

Check cyclic13_symmetry() {
  Check c;
  const PermutationTriple t{Permutation::parse_cycles("(1,2,3,4,5,6,7,8,9,10,11,12,13)", 13),
                            Permutation::parse_cycles(
                                "(1,2,3,4,5,6,7,8,9,10,11,12,13)(14,15,16,17,18,19,20,21,22,23,24,25,26)", 26),
                            Permutation::parse_cycles("()", 3)};
  c.expect(verify_automorphism(fixture("cyclic13"), t), "stated triple is not an automorphism");
  return c;
}

Check homog9_claims() {
  Check c;
  const auto params = parse_mosaic_parameters("2-(9,3,2)+2-(9,3,2)+2-(9,3,2)");
  const Mosaic a = fixture("homog9a"), b = fixture("homog9b");
  c.expect(verify_mosaic(a, params).pass, "first mosaic fails verification");
  c.expect(verify_mosaic(b, params).pass, "second mosaic fails verification");
  for (int x = 1; x <= 3; ++x) {
    c.expect(!check_resolvable(color_class(a, x)), "first mosaic: class " + std::to_string(x) + " resolvable");
    for (int y = x + 1; y <= 3; ++y) {
      c.expect(designs_isomorphic(color_class(a, x), color_class(a, y)).has_value(),
               "first mosaic: classes " + std::to_string(x) + "," + std::to_string(y) + " not isomorphic");
      c.expect(!designs_isomorphic(color_class(b, x), color_class(b, y)),
               "second mosaic: classes " + std::to_string(x) + "," + std::to_string(y) + " isomorphic");
    }
  }
  const auto res = check_resolvable(color_class(b, 1));
  c.expect(res && is_valid_resolution(color_class(b, 1), *res), "second mosaic: class 1 not resolvable");
  c.expect(!check_resolvable(color_class(b, 2)), "second mosaic: class 2 resolvable");
  c.expect(!check_resolvable(color_class(b, 3)), "second mosaic: class 3 resolvable");
  return c;
}

Check square13_claims() {
  Check c;
  const Mosaic m = fixture("square13");
  c.expect(verify_mosaic(m, parse_mosaic_parameters("2-(13,4,1)+2-(13,4,1)+2-(13,4,1)+2-(13,1,0)")).pass,
           "verify_mosaic failed");
  bool zeros = m.diagonal_zero();
  for (int i = 0; i < m.v(); ++i)
    for (int j = 0; j < m.b(); ++j) zeros = zeros && ((m.at(i, j) == 0) == (i == j));
  c.expect(zeros, "zeros are not exactly the diagonal");

  const MosaicGroup g = automorphism_group(m);
  c.expect(g.order == 3, "group order " + std::to_string(g.order));
  const Permutation a = Permutation::parse_cycles("(1,2,3)(4,5,6)(7,8,9)(10,11,12)", 13);
  const PermutationTriple stated{a, a, Permutation::parse_cycles("(1,2,3)", 3)};
  c.expect(verify_automorphism(m, stated), "stated triple is not an automorphism");
  c.expect(!g.generators.empty(), "no generators");
  for (const auto& t : g.generators) {
    // Conjugate in S_v x S_b x S_c iff every component has the stated cycle type.
    c.expect(cycle_type(t.alpha) == cycle_type(stated.alpha) && cycle_type(t.beta) == cycle_type(stated.beta) &&
                 cycle_type(t.gamma) == cycle_type(stated.gamma),
             "generator " + t.to_string() + " not conjugate to the stated triple");
    c.expect(t == stated || t == stated.inverse(), "generator " + t.to_string() + " outside the stated group");
  }
  c.expect(!has_regular_action(m), "has_regular_action returned true");
  return c;
}

Check search_inhomogeneous() {
  Check c;
  const auto found = serial_search("cyclic13.problem");
  const Mosaic target = canonical_form(fixture("cyclic13"));
  bool hit = false;
  for (const auto& m : found) hit = hit || canonical_form(m) == target;
  c.expect(!found.empty(), "no mosaics");
  c.expect(hit, "no canonical form equals the fixture's");
  c.notes.push_back(std::to_string(found.size()) + " classes");
  return c;
}

Check search_homogeneous() {
  Check c;
  const auto found = serial_search("homog9.problem");
  const auto keys = canonical_forms(found, 1, false);
  const std::set<Mosaic> set(keys.begin(), keys.end());
  c.expect(set.count(canonical_form(fixture("homog9a"))) == 1, "first fixture missing");
  c.expect(set.count(canonical_form(fixture("homog9b"))) == 1, "second fixture missing");
  c.notes.push_back(std::to_string(found.size()) + " classes");
  return c;
}

Check search_symmetric() {
  Check c;
  const auto found = serial_search("square13.problem");
  const Mosaic t3 = fixture("square13");
  int hits = 0;
  for (const auto& m : found) hits += isomorphic_up_to_transposition(m, t3);
  c.expect(hits > 0, "fixture not found up to transposition");
  c.notes.push_back(std::to_string(found.size()) + " classes");
  return c;
}

Check complement_formula() {
  Check c;
  auto oracle_lambda = [](const DesignParameters& p) {
    const auto a = admissible(p);
    return a.b - 2 * a.r + p.lambda;
  };
  const auto [d1, p1] = complement_design(color_class(fixture("cyclic13"), 1), {2, 13, 3, 1});
  c.expect(p1 == DesignParameters{2, 13, 10, 15}, "2-(13,3,1) complement is " + p1.to_string());
  c.expect(p1.lambda == oracle_lambda({2, 13, 3, 1}), "oracle disagrees for 2-(13,3,1)");
  c.expect(oracle::design_ok(d1, 2, 15), "complement design of 2-(13,3,1) fails naive counting");
  const auto [d2, p2] = complement_design(color_class(fixture("homog9a"), 1), {2, 9, 3, 2});
  c.expect(p2 == DesignParameters{2, 9, 6, 10}, "2-(9,3,2) complement is " + p2.to_string());
  c.expect(p2.lambda == oracle_lambda({2, 9, 3, 2}), "oracle disagrees for 2-(9,3,2)");
  c.expect(oracle::design_ok(d2, 2, 10), "complement design of 2-(9,3,2) fails naive counting");

  std::vector<std::pair<Design, DesignParameters>> seeds{{develop_blocks(7, {{0, 1, 3}}), {2, 7, 3, 1}},
                                                         {affine_plane(3), {2, 9, 3, 1}}};
  for (int v = 4; v <= 8; ++v)
    for (int k = 2; k <= v - 2; ++k) seeds.push_back({oracle::complete_design(v, k), {2, v, k, binomial(v - 2, k - 2)}});
  for (int x = 1; x <= 3; ++x) seeds.push_back({color_class(fixture("homog9b"), x), {2, 9, 3, 2}});
  std::mt19937 rng(2024);
  int broken = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& [seed, p] = seeds[rng() % seeds.size()];
    const Design d = oracle::relabel(seed, rng);
    const auto [cd, cp] = complement_design(d, p);
    const auto [ccd, ccp] = complement_design(cd, cp);
    broken += !(ccd == d && ccp == p && cp.lambda == oracle_lambda(p));
  }
  c.expect(broken == 0, std::to_string(broken) + " of 1000 involution trials failed");
  return c;
}

// Selections of a toy search as a set of column lists, general-mode lists sorted.
std::set<std::vector<oracle::Column>> selection_set(const std::vector<Realization>& rs, bool diagonal) {
  std::set<std::vector<oracle::Column>> out;
  for (const auto& r : rs) {
    auto cols = oracle::columns(r.mosaic);
    if (!diagonal) std::sort(cols.begin(), cols.end());
    out.insert(cols);
  }
  return out;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937 rng(99);

  // verify_design against naive subset counting.
  int mismatches = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int v = std::uniform_int_distribution<int>(4, 9)(rng);
    const int k = std::uniform_int_distribution<int>(2, v - 1)(rng);
    const int b = std::uniform_int_distribution<int>(1, 16)(rng);
    std::vector<Block> blocks;
    for (int j = 0; j < b; ++j) {
      std::vector<int> pts(v);
      std::iota(pts.begin(), pts.end(), 0);
      std::shuffle(pts.begin(), pts.end(), rng);
      pts.resize(k);
      blocks.push_back(pts);
    }
    const Design d(v, blocks);
    for (Count lambda = 0; lambda <= 2; ++lambda)
      mismatches += verify_design(d, {2, v, k, lambda}).pass != oracle::design_ok(d, 2, lambda);
  }
  std::vector<Design> known{develop_blocks(7, {{0, 1, 3}}), affine_plane(3), oracle::complete_design(6, 3)};
  for (const char* name : {"homog9a", "homog9b"})
    for (int x = 1; x <= 3; ++x) known.push_back(color_class(fixture(name), x));
  for (const Design& d : known) {
    const auto p = infer_design_parameters(d);
    mismatches += verify_design(d, p).pass != oracle::design_ok(d, 2, p.lambda);
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " verify_design mismatches");

  // check_resolvable against brute-force partition search.
  mismatches = 0;
  for (const Design& d : known) mismatches += check_resolvable(d).has_value() != oracle::resolvable(d);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = trial % 2 ? 6 : 9, k = 3;
    std::vector<Block> blocks;
    for (int cls = 0; cls < 3; ++cls) {
      std::vector<int> pts(v);
      std::iota(pts.begin(), pts.end(), 0);
      std::shuffle(pts.begin(), pts.end(), rng);
      for (int s = 0; s < v; s += k) blocks.emplace_back(pts.begin() + s, pts.begin() + s + k);
    }
    if (trial % 3 == 0) {
      std::vector<int> pts(v);
      std::iota(pts.begin(), pts.end(), 0);
      std::shuffle(pts.begin(), pts.end(), rng);
      blocks[rng() % blocks.size()] = Block(pts.begin(), pts.begin() + k);
    }
    const Design d(v, blocks);
    mismatches += check_resolvable(d).has_value() != oracle::resolvable(d);
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " check_resolvable mismatches");

  // designs_isomorphic against the full permutation sweep.
  mismatches = 0;
  std::vector<Design> pool;
  for (const char* name : {"homog9a", "homog9b"})
    for (int x = 1; x <= 3; ++x) pool.push_back(color_class(fixture(name), x));
  pool.push_back(oracle::relabel(pool[3], rng));
  for (std::size_t x = 0; x < pool.size(); ++x)
    for (std::size_t y = x; y < pool.size(); ++y)
      mismatches += designs_isomorphic(pool[x], pool[y]).has_value() != oracle::isomorphic(pool[x], pool[y]);
  const Design fano = develop_blocks(7, {{0, 1, 3}});
  for (int trial = 0; trial < 5; ++trial) {
    const Design other = oracle::relabel(fano, rng);
    mismatches += designs_isomorphic(fano, other).has_value() != oracle::isomorphic(fano, other);
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " designs_isomorphic mismatches");

  // Trivial-group search against direct matrix enumeration.
  for (const char* text : {"2-(7,3,1)+2-(7,3,1)+2-(7,1,0)", "2-(7,3,1)+2-(7,4,2)", "2-(6,3,2)+2-(6,3,2)"}) {
    SearchProblem p;
    p.params = parse_mosaic_parameters(text);
    p.mode = p.params.diagonal_zero ? SearchMode::symmetric_diagonal : SearchMode::general;
    p.allow_degenerate = true;
    std::vector<int> sizes;
    std::vector<Count> lambdas;
    for (const auto& col : p.params.colors) {
      sizes.push_back(col.k);
      lambdas.push_back(col.lambda);
    }
    std::set<std::vector<oracle::Column>> expected;
    std::set<Mosaic> expected_classes;
    for (auto cols : oracle::matrices(p.params.v, p.params.b, sizes, lambdas, p.params.diagonal_zero)) {
      std::vector<Color> e(static_cast<std::size_t>(p.params.v) * p.params.b);
      for (int i = 0; i < p.params.v; ++i)
        for (int j = 0; j < p.params.b; ++j) e[static_cast<std::size_t>(i) * p.params.b + j] = cols[j][i];
      const Mosaic m(p.params.v, p.params.b, p.params.c(), p.params.diagonal_zero, e);
      Mosaic key = canonical_form(m);
      if (p.params.diagonal_zero) key = std::min(key, canonical_form(transpose(m)));
      expected_classes.insert(key);
      if (!p.params.diagonal_zero) std::sort(cols.begin(), cols.end());
      expected.insert(cols);
    }
    const bool diagonal = p.params.diagonal_zero;
    const auto raw = selection_set(solve_selections(p, {}), diagonal);
    const SearchResult r = diagonal ? symmetric_search(p, {}) : km_search(p, {});
    c.expect(raw == expected, std::string(text) + ": selections differ from enumeration");
    c.expect(r.mosaics.size() == expected_classes.size(),
             std::string(text) + ": " + std::to_string(r.mosaics.size()) + " classes, enumeration has " +
                 std::to_string(expected_classes.size()));
  }
  return c;
}

struct Output {
  int code;
  std::string out;
};

Output run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout";
  const std::string cmd = std::string(MOSAIC_CLI) + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, io::read_file(out)};
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (fs::exists(dir))
    for (const auto& e : fs::directory_iterator(dir)) files[e.path().filename().string()] = io::read_file(e.path());
  return files;
}

Check determinism() {
  Check c;
  const fs::path dir = fs::temp_directory_path() / ("mosaic_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto fx = [](const std::string& n) { return support::fixture_path(n); };

  std::vector<std::string> commands;
  for (const char* t : kMosaics) {
    const std::string m = fx(std::string(t) + ".mosaic");
    for (const char* cmd : {"verify", "resolvable", "aut", "canon"}) {
      commands.push_back(std::string(cmd) + " " + m);
      commands.push_back(std::string("--json ") + cmd + " " + m);
    }
  }
  commands.push_back("canon --transpose " + fx("square13.mosaic"));
  for (const char* d : {"ag23.design", "homog9a_c1.design", "homog9a_c2.design"})
    for (const char* cmd : {"verify", "resolvable", "from-resolution", "--json verify", "--json resolvable"})
      commands.push_back(std::string(cmd) + " " + fx(d));
  for (const char* f : {"cyclic13.df", "fano_tiling.df"}) {
    commands.push_back("develop " + fx(f));
    commands.push_back("--json develop " + fx(f));
  }
  commands.push_back("iso " + fx("homog9a.mosaic") + " " + fx("homog9b.mosaic"));
  commands.push_back("--json iso " + fx("homog9a_c1.design") + " " + fx("homog9a_c2.design"));
  commands.push_back("iso --transpose " + fx("square13.mosaic") + " " + fx("square13.mosaic"));
  for (const auto& cmd : commands) {
    const Output a = run_cli(cmd, dir), b = run_cli(cmd, dir);
    c.expect(a.code == b.code && a.out == b.out && !a.out.empty(), "differs: " + cmd);
  }

  for (const char* problem : {"cyclic13.problem", "homog9.problem", "square13.problem"}) {
    std::map<std::string, std::string> runs[2];
    std::string outs[2];
    for (int x = 0; x < 2; ++x) {
      const fs::path out = dir / "search";  // the report lists output paths
      fs::remove_all(out);
      const Output o = run_cli("--json search " + fx(problem) + " --threads 4 --out " + out.string(), dir);
      c.expect(o.code == 0, std::string("search failed: ") + problem);
      outs[x] = o.out;
      runs[x] = read_dir(out);
    }
    c.expect(outs[0] == outs[1], std::string("threaded search reports differ: ") + problem);
    c.expect(runs[0] == runs[1], std::string("threaded search files differ: ") + problem);
    // Same mosaics, in the same order, as the single-threaded library search.
    const auto serial = serial_search(problem);
    bool same = runs[0].size() == serial.size();
    std::size_t x = 0;
    for (const auto& [name, text] : runs[0]) same = same && text == io::format_mosaic(serial[x++]);
    c.expect(same, std::string("threaded search differs from serial: ") + problem);
  }
  fs::remove_all(dir);
  c.notes.push_back(std::to_string(commands.size()) + " commands and 3 searches, twice each");
  return c;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "cyclic13-reproduction", cyclic13_reproduction},
      {2, "cyclic13-symmetry", cyclic13_symmetry},
      {3, "homog9-claims", homog9_claims},
      {4, "square13-claims", square13_claims},
      {5, "search-inhomogeneous", search_inhomogeneous},
      {6, "search-homogeneous", search_homogeneous},
      {7, "search-symmetric", search_symmetric},
      {8, "complement-formula", complement_formula},
      {9, "oracle-equivalence", oracle_equivalence},
      {10, "determinism", determinism},
  };
  std::set<int> wanted;
  for (int x = 1; x < argc; ++x) wanted.insert(std::atoi(argv[x]));

  int failed = 0;
  for (const auto& cr : all) {
    if (!wanted.empty() && !wanted.count(cr.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Searches run once and are shared: 10 alone also pays for the serial runs.
    if (secs > kBudget[cr.id]) c.expect(false, "over budget " + std::to_string(kBudget[cr.id]) + " s");
    std::ostringstream line;
    line << (c.pass ? "[PASS] " : "[FAIL] ") << cr.id << " " << cr.name << " (" << std::fixed << std::setprecision(3)
       << secs << " s)";
    for (const auto& n : c.notes) line << "; " << n;
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
    failed += !c.pass;
  }
  return failed ? 1 : 0;
}
