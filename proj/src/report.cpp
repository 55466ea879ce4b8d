#include "mosaic/report.hpp"

#include <cstdio>

#include "mosaic/errors.hpp"

namespace mosaic::report {

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Json to_json(const RunReport& r) {
  Json inputs = Json::array();
  for (const auto& in : r.inputs) inputs.push_back({{"path", in.path}, {"digest", in.digest}});
  Json j = {{"command", r.command}, {"inputs", inputs}, {"outcome", r.outcome}, {"details", r.details}};
  if (r.timing) j["timing"] = *r.timing;
  return j;
}

RunReport from_json(const Json& j) {
  try {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    for (const auto& in : j.at("inputs"))
      r.inputs.push_back({in.at("path").get<std::string>(), in.at("digest").get<std::string>()});
    r.outcome = j.at("outcome").get<std::string>();
    r.details = j.at("details");
    if (j.contains("timing")) r.timing = j.at("timing");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run report: ") + e.what(), 0);
  }
}

std::string serialize(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

RunReport parse_report(std::string_view text) {
  try {
    return from_json(Json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("run report: ") + e.what(), 0);
  }
}

Json to_json(const DesignParameters& p) {
  return {{"t", p.t}, {"v", p.v}, {"k", p.k}, {"lambda", p.lambda}, {"text", p.to_string()}};
}

Json to_json(const DesignReport& r) {
  Json j = {{"pass", r.pass}, {"params", to_json(r.params)}};
  if (r.witness) {
    Json subset = Json::array();
    for (int p : r.witness->subset) subset.push_back(p + 1);
    j["witness"] = {{"subset", subset}, {"count", r.witness->count}};
  }
  Json hist = Json::array();
  for (auto [coverage, subsets] : r.histogram) hist.push_back({{"coverage", coverage}, {"subsets", subsets}});
  j["histogram"] = hist;
  return j;
}

Json to_json(const MosaicReport& r) {
  Json colors = Json::array();
  for (const auto& c : r.colors) colors.push_back(to_json(c));
  Json j = {{"pass", r.pass},
            {"params", r.params.to_string()},
            {"diagonal_zero", r.params.diagonal_zero},
            {"column_partition", r.column_partition},
            {"diagonal_ok", r.diagonal_ok},
            {"colors", colors}};
  if (r.column_witness)
    j["column_witness"] = {{"column", r.column_witness->column + 1},
                           {"color", r.column_witness->color},
                           {"count", r.column_witness->count},
                           {"expected", r.column_witness->expected}};
  return j;
}

Json to_json(const PermutationTriple& t) {
  return {{"alpha", t.alpha.to_cycles()}, {"beta", t.beta.to_cycles()}, {"gamma", t.gamma.to_cycles()}};
}

Json to_json(const SearchStats& s) {
  return {{"orbits", s.orbits},
          {"nodes", s.nodes},
          {"selections", s.raw_solutions},
          {"unique", s.unique},
          {"tasks", s.tasks}};
}

}  // namespace mosaic::report
