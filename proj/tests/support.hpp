#pragma once

#include <string>

#include "mosaic/io.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) { return std::string(MOSAIC_FIXTURE_DIR) + "/" + name; }

inline std::string fixture_text(const std::string& name) { return mosaic::io::read_file(fixture_path(name)); }

inline mosaic::Mosaic fixture_mosaic(const std::string& name) {
  return mosaic::io::parse_mosaic(fixture_text(name + ".mosaic"));
}

inline mosaic::Design fixture_design(const std::string& name) {
  return mosaic::io::parse_design(fixture_text(name + ".design"));
}

}  // namespace support
