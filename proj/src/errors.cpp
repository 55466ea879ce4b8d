#include "mosaic/errors.hpp"

namespace mosaic {

namespace {
std::string decorate(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}
}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(decorate(message, line, column)), line_(line), column_(column) {}

}  // namespace mosaic
