#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mosaic/designs.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/search.hpp"
#include "mosaic/symmetry.hpp"

namespace mosaic::report {

using Json = nlohmann::ordered_json;

struct InputDigest {
  std::string path;
  std::string digest;  // "fnv1a64:<16 hex digits>"

  friend bool operator==(const InputDigest&, const InputDigest&) = default;
};

/// Machine-readable result of one CLI command.
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  std::string outcome;  // "pass", "fail", "error" or a count such as "3 mosaics"
  Json details = Json::object();
  /// Seconds per phase; left empty unless timing was requested, so
  /// reports stay byte-stable across runs.
  std::optional<Json> timing;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string fnv1a64(std::string_view bytes);

Json to_json(const RunReport& r);
RunReport from_json(const Json& j);
/// Pretty-printed JSON with a trailing newline.
std::string serialize(const RunReport& r);
RunReport parse_report(std::string_view text);

Json to_json(const DesignParameters& p);
Json to_json(const DesignReport& r);
Json to_json(const MosaicReport& r);
Json to_json(const PermutationTriple& t);
Json to_json(const SearchStats& s);

}  // namespace mosaic::report
