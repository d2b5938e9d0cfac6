#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bigres/system.hpp"

namespace bigres {

/// A malformed system file. Line and column are 1-based and point at the
/// offending JSON value; both are 0 when the file could not be read.
class SystemFileError : public std::runtime_error {
 public:
  SystemFileError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses
///   {"field": "GF(32003)" | "Q", "d": [d1, d2],
///    "polys": [[[coef, es, et, eu, ev], ...], [...], [...]]}
/// where coef is an integer or a "num/den" string. Repeated monomials add up.
AnySystem parse_system(std::string_view text);
AnySystem read_system_file(const std::string& path);

/// Inverse of parse_system: terms in strand order, zero coefficients omitted.
std::string system_to_json(const AnySystem& sys);

}  // namespace bigres
