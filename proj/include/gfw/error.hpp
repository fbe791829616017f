#ifndef GFW_ERROR_HPP
#define GFW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gfw {

/// Input outside an operation's mathematical domain (zero polynomial,
/// log of a non-positive enclosure, zero element where a unit is needed).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Input that is well formed but not handled here (non-monogenic orders,
/// wild ramification, unsupported relative extensions).
class UnsupportedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A guard on instance size tripped.
class TooLargeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string& what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace gfw

#endif
