#pragma once

#include <stdexcept>
#include <string>

namespace affkm {

/// Malformed algebra spec string ("A2", "B(1,2)", ...). Carries the offset
/// of the first offending character.
class parse_error : public std::invalid_argument {
public:
  parse_error(const std::string& what, std::size_t pos)
      : std::invalid_argument(what + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

/// A named hypothesis of an operation was violated. The message names the
/// hypothesis so callers can surface it verbatim.
class precondition_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Dominance and integrality checks require an integer level; arithmetic
/// elsewhere accepts any rational level.
class non_integral_level : public precondition_error {
public:
  non_integral_level() : precondition_error("weight level is not an integer") {}
};

} // namespace affkm
