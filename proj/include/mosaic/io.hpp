#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mosaic/constructions.hpp"
#include "mosaic/designs.hpp"
#include "mosaic/mosaic.hpp"
#include "mosaic/search.hpp"

namespace mosaic::io {

// Every parser throws ParseError with a 1-based line and column.

/// Header "v b c [diag]", then v lines of b entries in 0..c.
Mosaic parse_mosaic(std::string_view text);
std::string format_mosaic(const Mosaic& m);

/// Header "v b", then b lines of 1-based points.
Design parse_design(std::string_view text);
std::string format_design(const Design& d);

/// Header "n c s", then c lines of s brace sets: "{0,1,4} {0,2,7}".
DifferenceFamily parse_family(std::string_view text);
std::string format_family(const DifferenceFamily& f);

/// Key-value lines, '#' starts a comment:
///   params 2-(13,4,1)+2-(13,4,1)+2-(13,4,1)+2-(13,1,0)
///   mode symmetric            (general | symmetric; default general)
///   generator (1,2,3)(4,5,6) (1,2,3)
/// A generator is alpha cycles (points) and gamma cycles (colors); a
/// missing gamma means the identity.
SearchProblem parse_problem(std::string_view text);
std::string format_problem(const SearchProblem& p);

enum class FileKind { mosaic, design };

/// Looks at the header token count: two for a design, three or four for a mosaic.
FileKind detect_kind(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mosaic::io
