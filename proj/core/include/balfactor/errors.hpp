#pragma once

#include <stdexcept>
#include <string>

namespace balfactor {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad palette construction (k too small, non-unit or duplicate vectors).
class PaletteError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix length mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input file; message carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Edge outside the host graph.
class EdgeError : public Error {
 public:
  using Error::Error;
};

// Part size does not divide the vertex count.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

// Swap endpoints in the same part.
class InvalidSwapError : public Error {
 public:
  using Error::Error;
};

// Pattern graph incompatible with the factor.
class PatternError : public Error {
 public:
  using Error::Error;
};

// Enumeration guard exceeded; message names the offending count.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace balfactor
