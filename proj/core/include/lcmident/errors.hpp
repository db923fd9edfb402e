#pragma once

#include <stdexcept>
#include <string>

namespace lcmident {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input documents (model files, compose specs).
class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// The evaluation point landed on a measure-zero degeneracy set (vanishing
/// pivot value, collapsed gcd degree).  Operations that own the point catch
/// this, redraw, and retry.
class DegeneratePointError : public Error {
  public:
    explicit DegeneratePointError(const std::string& what) : Error(what) {}
};

}  // namespace lcmident
