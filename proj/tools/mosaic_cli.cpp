// Command-line front end. Exit codes: 0 pass, 1 fail, 2 parse error,
// 3 precondition error, 4 internal error.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mosaic/constructions.hpp"
#include "mosaic/designs.hpp"
#include "mosaic/errors.hpp"
#include "mosaic/io.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/report.hpp"
#include "mosaic/search.hpp"
#include "mosaic/symmetry.hpp"

namespace fs = std::filesystem;
using namespace mosaic;
using report::Json;
using report::RunReport;

namespace {

struct Global {
  bool json = false;
  bool timing = false;
};

struct Phase {
  std::string name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

class Timer {
public:
  void start(std::string name) { phases_.push_back({std::move(name)}); stopped_.push_back(0); }
  void stop() {
    stopped_.back() =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - phases_.back().start).count();
  }
  Json json() const {
    Json j = Json::object();
    for (std::size_t x = 0; x < phases_.size(); ++x) j[phases_[x].name] = stopped_[x];
    return j;
  }
  double total() const {
    double t = 0;
    for (double s : stopped_) t += s;
    return t;
  }

private:
  std::vector<Phase> phases_;
  std::vector<double> stopped_;
};

struct Loaded {
  std::string text;
  report::InputDigest digest;
};

Loaded load(const std::string& path) {
  Loaded in;
  in.text = io::read_file(path);
  in.digest = {path, report::fnv1a64(in.text)};
  return in;
}

// Re-throws parse errors with the file name in front.
template <class F>
auto parse_in(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

int finish(const Global& g, RunReport& r, const Timer& timer, const std::string& text, int code) {
  if (g.timing) r.timing = timer.json();
  if (g.json)
    std::cout << report::serialize(r);
  else
    std::cout << text;
  if (g.timing && !g.json) std::cerr << "wall " << timer.total() << " s\n";
  return code;
}

std::string witness_text(const DesignReport& d) {
  if (!d.witness) return "";
  std::ostringstream out;
  out << " (subset {";
  for (std::size_t x = 0; x < d.witness->subset.size(); ++x) out << (x ? "," : "") << d.witness->subset[x] + 1;
  out << "} covered " << d.witness->count << " times, expected " << d.params.lambda << ")";
  return out.str();
}

int cmd_verify(const Global& g, const std::string& path, const std::optional<std::string>& params) {
  Timer timer;
  RunReport r{"verify", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  std::ostringstream text;
  bool pass = false;
  timer.start("verify");
  if (io::detect_kind(in.text) == io::FileKind::design) {
    const Design d = parse_in(path, [&] { return io::parse_design(in.text); });
    const DesignParameters p = params ? parse_design_parameters(*params) : infer_design_parameters(d);
    const DesignReport rep = verify_design(d, p);
    pass = rep.pass;
    r.details = report::to_json(rep);
    text << (pass ? "pass " : "fail ") << p.to_string() << witness_text(rep) << "\n";
  } else {
    const Mosaic m = parse_in(path, [&] { return io::parse_mosaic(in.text); });
    const MosaicReport rep = params ? verify_mosaic(m, parse_mosaic_parameters(*params)) : verify_mosaic(m);
    pass = rep.pass;
    r.details = report::to_json(rep);
    text << (pass ? "pass " : "fail ") << rep.params.to_string() << "\n";
    for (std::size_t i = 0; i < rep.colors.size(); ++i)
      text << "  color " << i + 1 << ' ' << rep.colors[i].params.to_string() << ' '
           << (rep.colors[i].pass ? "pass" : "fail") << witness_text(rep.colors[i]) << "\n";
    if (!rep.column_partition && rep.column_witness)
      text << "  column " << rep.column_witness->column + 1 << " has " << rep.column_witness->count
           << " cells of color " << rep.column_witness->color << ", expected " << rep.column_witness->expected
           << "\n";
    if (!rep.diagonal_ok) text << "  zeros are not exactly on the diagonal\n";
  }
  timer.stop();
  r.outcome = pass ? "pass" : "fail";
  return finish(g, r, timer, text.str(), pass ? 0 : 1);
}

// Writes `content` to `out` if given, else returns it for standard output.
std::string emit(const std::optional<std::string>& out, const std::string& content, RunReport& r) {
  r.details["output_digest"] = report::fnv1a64(content);
  if (!out) {
    r.details["output"] = content;
    return content;
  }
  io::write_file(*out, content);
  r.details["output_path"] = *out;
  return "wrote " + *out + "\n";
}

int cmd_develop(const Global& g, const std::string& path, const std::optional<std::string>& out) {
  Timer timer;
  RunReport r{"develop", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  timer.start("develop");
  const DifferenceFamily f = parse_in(path, [&] { return io::parse_family(in.text); });
  const FamilyReport fr = validate_family(f);
  if (!fr.pass) {
    timer.stop();
    r.outcome = "fail";
    r.details["failure"] = fr.failure;
    return finish(g, r, timer, "fail: " + fr.failure + "\n", 1);
  }
  const Mosaic m = develop(f);
  timer.stop();
  r.outcome = "pass";
  r.details["params"] = family_parameters(f).to_string();
  return finish(g, r, timer, emit(out, io::format_mosaic(m), r), 0);
}

Json classes_json(const Resolution& res) {
  Json classes = Json::array();
  for (const auto& cls : res.classes) {
    Json c = Json::array();
    for (auto b : cls) c.push_back(b + 1);
    classes.push_back(c);
  }
  return classes;
}

std::string classes_text(const Resolution& res) {
  std::ostringstream out;
  for (const auto& cls : res.classes) {
    out << "  class";
    for (auto b : cls) out << ' ' << b + 1;
    out << "\n";
  }
  return out.str();
}

int cmd_from_resolution(const Global& g, const std::string& path, const std::optional<std::string>& out) {
  Timer timer;
  RunReport r{"from-resolution", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  timer.start("resolve");
  const Design d = parse_in(path, [&] { return io::parse_design(in.text); });
  const DesignParameters p = infer_design_parameters(d);
  if (!verify_design(d, p).pass) throw PreconditionError("from-resolution: input is not a 2-design");
  const auto res = check_resolvable(d);
  timer.stop();
  if (!res) {
    r.outcome = "fail";
    r.details["resolvable"] = false;
    return finish(g, r, timer, "fail: design is not resolvable\n", 1);
  }
  const Mosaic m = from_resolution(d, *res);
  r.outcome = "pass";
  r.details["resolution"] = classes_json(*res);
  r.details["params"] = infer_parameters(m).to_string();
  return finish(g, r, timer, emit(out, io::format_mosaic(m), r), 0);
}

int cmd_resolvable(const Global& g, const std::string& path, std::optional<int> color) {
  Timer timer;
  RunReport r{"resolvable", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  std::vector<std::pair<std::string, Design>> designs;
  if (io::detect_kind(in.text) == io::FileKind::design) {
    if (color) throw PreconditionError("resolvable: --color applies to mosaic files");
    designs.emplace_back("design", parse_in(path, [&] { return io::parse_design(in.text); }));
  } else {
    const Mosaic m = parse_in(path, [&] { return io::parse_mosaic(in.text); });
    if (color && (*color < 1 || *color > m.c()))
      throw PreconditionError("resolvable: color " + std::to_string(*color) + " outside 1.." +
                              std::to_string(m.c()));
    for (int i = 1; i <= m.c(); ++i)
      if (!color || *color == i) designs.emplace_back("color " + std::to_string(i), color_class(m, i));
  }
  timer.start("resolve");
  std::ostringstream text;
  Json results = Json::array();
  bool all = true;
  for (const auto& [name, d] : designs) {
    const auto res = check_resolvable(d);
    all = all && res.has_value();
    Json entry = {{"name", name}, {"resolvable", res.has_value()}};
    if (res) entry["classes"] = classes_json(*res);
    results.push_back(entry);
    text << name << (res ? ": resolvable\n" : ": not resolvable\n");
    if (res) text << classes_text(*res);
  }
  timer.stop();
  r.details["results"] = results;
  r.outcome = all ? "pass" : "fail";
  return finish(g, r, timer, text.str(), all ? 0 : 1);
}

int cmd_aut(const Global& g, const std::string& path) {
  Timer timer;
  RunReport r{"aut", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  const Mosaic m = parse_in(path, [&] { return io::parse_mosaic(in.text); });
  timer.start("group");
  const MosaicGroup group = automorphism_group(m);
  const bool regular = m.v() == m.b() ? has_regular_action(m) : false;
  timer.stop();
  std::ostringstream text;
  text << "order " << group.order << "\n";
  Json gens = Json::array();
  for (const auto& t : group.generators) {
    text << "  " << t.to_string() << "\n";
    gens.push_back(report::to_json(t));
  }
  if (m.v() == m.b()) text << "regular action " << (regular ? "yes" : "no") << "\n";
  r.outcome = "pass";
  r.details = {{"order", group.order}, {"generators", gens}};
  if (m.v() == m.b()) r.details["regular_action"] = regular;
  return finish(g, r, timer, text.str(), 0);
}

int cmd_canon(const Global& g, const std::string& path, bool transposition,
              const std::optional<std::string>& out) {
  Timer timer;
  RunReport r{"canon", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  const Mosaic m = parse_in(path, [&] { return io::parse_mosaic(in.text); });
  timer.start("canon");
  const Mosaic c = canonical_forms({m}, 1, transposition).front();
  timer.stop();
  r.outcome = "pass";
  return finish(g, r, timer, emit(out, io::format_mosaic(c), r), 0);
}

int cmd_iso(const Global& g, const std::string& p1, const std::string& p2, bool transposition) {
  Timer timer;
  RunReport r{"iso", {}, "", Json::object(), std::nullopt};
  const Loaded a = load(p1), b = load(p2);
  r.inputs = {a.digest, b.digest};
  const auto kind = io::detect_kind(a.text);
  if (kind != io::detect_kind(b.text)) throw PreconditionError("iso: inputs must both be designs or both mosaics");
  std::ostringstream text;
  bool iso = false;
  timer.start("iso");
  if (kind == io::FileKind::design) {
    if (transposition) throw PreconditionError("iso: --transpose applies to mosaics");
    const Design d1 = parse_in(p1, [&] { return io::parse_design(a.text); });
    const Design d2 = parse_in(p2, [&] { return io::parse_design(b.text); });
    const auto map = designs_isomorphic(d1, d2);
    iso = map.has_value();
    if (map) {
      r.details = {{"points", map->points.to_cycles()}, {"blocks", map->blocks.to_cycles()}};
      text << "isomorphic\n  points " << map->points.to_cycles() << "\n  blocks " << map->blocks.to_cycles()
           << "\n";
    }
  } else {
    const Mosaic m1 = parse_in(p1, [&] { return io::parse_mosaic(a.text); });
    const Mosaic m2 = parse_in(p2, [&] { return io::parse_mosaic(b.text); });
    auto map = find_isomorphism(m1, m2);
    bool transposed = false;
    if (!map && transposition && m2.v() == m2.b()) {
      map = find_isomorphism(m1, transpose(m2));
      transposed = map.has_value();
    }
    iso = map.has_value();
    if (map) {
      r.details = report::to_json(*map);
      r.details["transposed"] = transposed;
      text << "isomorphic" << (transposed ? " to the transpose" : "") << "\n  " << map->to_string() << "\n";
    }
  }
  timer.stop();
  if (!iso) text << "not isomorphic\n";
  r.details["isomorphic"] = iso;
  r.outcome = iso ? "pass" : "fail";
  return finish(g, r, timer, text.str(), iso ? 0 : 1);
}

int cmd_search(const Global& g, const std::string& path, std::size_t limit, bool symmetric, int threads,
               const std::optional<std::string>& out_dir) {
  Timer timer;
  RunReport r{"search", {}, "", Json::object(), std::nullopt};
  const Loaded in = load(path);
  r.inputs.push_back(in.digest);
  SearchProblem problem = parse_in(path, [&] { return io::parse_problem(in.text); });
  if (symmetric) problem.mode = SearchMode::symmetric_diagonal;
  const SearchOptions options{limit, std::max(threads, 1)};
  timer.start("search");
  const SearchResult result =
      problem.mode == SearchMode::symmetric_diagonal ? symmetric_search(problem, options) : km_search(problem, options);
  timer.stop();

  std::ostringstream text;
  const auto& s = result.stats;
  text << "problem " << problem.params.to_string() << "\n"
       << "orbits " << s.orbits << "\n"
       << "nodes " << s.nodes << "\n"
       << "selections " << s.raw_solutions << "\n"
       << "mosaics " << s.unique << "\n";
  Json mosaics = Json::array();
  if (out_dir) fs::create_directories(*out_dir);
  for (std::size_t x = 0; x < result.mosaics.size(); ++x) {
    const std::string content = io::format_mosaic(result.mosaics[x]);
    Json entry = {{"digest", report::fnv1a64(content)}};
    Json autos = Json::array();
    for (const auto& t : result.automorphisms[x]) autos.push_back(report::to_json(t));
    entry["automorphisms"] = autos;
    if (out_dir) {
      char name[32];
      std::snprintf(name, sizeof name, "mosaic_%04zu.mosaic", x + 1);
      const fs::path file = fs::path(*out_dir) / name;
      io::write_file(file, content);
      entry["path"] = file.string();
    } else {
      entry["mosaic"] = content;
      text << "\n" << content;
    }
    mosaics.push_back(entry);
  }
  if (out_dir) text << "wrote " << result.mosaics.size() << " files to " << *out_dir << "\n";
  r.outcome = std::to_string(s.unique) + " mosaics";
  r.details = {{"params", problem.params.to_string()},
               {"mode", problem.mode == SearchMode::symmetric_diagonal ? "symmetric" : "general"},
               {"limit", limit},
               {"stats", report::to_json(s)},
               {"mosaics", mosaics}};
  if (!g.json && !g.timing) std::cerr << "wall " << timer.total() << " s\n";
  return finish(g, r, timer, text.str(), 0);
}

int report_error(const Global& g, const std::string& command, const char* kind, const std::string& what,
                 int code) {
  if (g.json) {
    RunReport r{command, {}, "error", {{"kind", kind}, {"message", what}}, std::nullopt};
    std::cout << report::serialize(r);
  }
  std::cerr << kind << " error: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify, construct, compare and search for mosaics of combinatorial designs."};
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.json, "Print a JSON run report instead of text");
  app.add_flag("--timing", g.timing, "Record wall-clock time per phase");

  std::string path, path2;
  std::optional<std::string> params, out;
  std::optional<int> color;
  bool transposition = false, symmetric = false;
  std::size_t limit = 0;
  int threads = 1;

  auto* verify = app.add_subcommand("verify", "Verify a mosaic or design file");
  verify->add_option("file", path, "Mosaic or design file")->required();
  verify->add_option("--params", params, "Declared parameters, e.g. 2-(9,3,2)+2-(9,3,2)+2-(9,3,2)");

  auto* dev = app.add_subcommand("develop", "Develop a difference family file into a mosaic");
  dev->add_option("file", path, "Difference family file")->required();
  dev->add_option("-o,--output", out, "Write the mosaic here instead of standard output");

  auto* fres = app.add_subcommand("from-resolution", "Build a homogeneous mosaic from a resolvable design");
  fres->add_option("file", path, "Design file")->required();
  fres->add_option("-o,--output", out, "Write the mosaic here instead of standard output");

  auto* res = app.add_subcommand("resolvable", "Search for a resolution of a design or mosaic color classes");
  res->add_option("file", path, "Design or mosaic file")->required();
  res->add_option("--color", color, "Only this color class (1-based) of a mosaic");

  auto* aut = app.add_subcommand("aut", "Full automorphism group of a mosaic");
  aut->add_option("file", path, "Mosaic file")->required();

  auto* canon = app.add_subcommand("canon", "Canonical form of a mosaic");
  canon->add_option("file", path, "Mosaic file")->required();
  canon->add_flag("--transpose", transposition, "Canonical up to transposition (square mosaics)");
  canon->add_option("-o,--output", out, "Write the canonical form here instead of standard output");

  auto* iso = app.add_subcommand("iso", "Test two designs or two mosaics for isomorphism");
  iso->add_option("file1", path, "First file")->required();
  iso->add_option("file2", path2, "Second file")->required();
  iso->add_flag("--transpose", transposition, "Also try the transpose of the second mosaic");

  auto* search = app.add_subcommand("search", "Prescribed-automorphism search");
  search->add_option("file", path, "Problem file")->required();
  search->add_option("--limit", limit, "Stop after this many raw selections (0 = all)");
  search->add_flag("--symmetric", symmetric, "Square diagonal-zero mode");
  search->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--out", out, "Directory for the found mosaic files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*verify) return cmd_verify(g, path, params);
    if (*dev) return cmd_develop(g, path, out);
    if (*fres) return cmd_from_resolution(g, path, out);
    if (*res) return cmd_resolvable(g, path, color);
    if (*aut) return cmd_aut(g, path);
    if (*canon) return cmd_canon(g, path, transposition, out);
    if (*iso) return cmd_iso(g, path, path2, transposition);
    if (*search) return cmd_search(g, path, limit, symmetric, threads, out);
  } catch (const ParseError& e) {
    return report_error(g, name, "parse", e.what(), 2);
  } catch (const PreconditionError& e) {
    return report_error(g, name, "precondition", e.what(), 3);
  } catch (const InternalError& e) {
    return report_error(g, name, "internal", e.what(), 4);
  } catch (const std::exception& e) {
    return report_error(g, name, "precondition", e.what(), 3);
  }
  return 3;
}
