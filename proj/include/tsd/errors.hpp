#pragma once

#include <stdexcept>
#include <string>

namespace tsd {

// Malformed input text (design files, registry files, scalar literals).
// line is 1-based; 0 means "not tied to a specific line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Input is well formed but outside what the implementation handles
// (irrational coordinates where a rational lattice is required, etc).
class UnsupportedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured work bound (factorization bound, discriminant-group bound)
// was exceeded.  Callers may retry with a larger bound.
class BoundExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tsd
