#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monoplane {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input line (wrong arity, bad number, unknown label).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A raw feature outside [0,1].
class RangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ConstantFeatureError : public Error {
 public:
  explicit ConstantFeatureError(std::size_t feature)
      : Error("feature " + std::to_string(feature) + " is constant over the set (zero scale)"),
        feature_(feature) {}
  std::size_t feature() const noexcept { return feature_; }

 private:
  std::size_t feature_;
};

class SplitError : public Error {
 public:
  SplitError(const std::string& what, std::vector<std::size_t> offending)
      : Error(what + format(offending)), offending_(std::move(offending)) {}
  const std::vector<std::size_t>& offending() const noexcept { return offending_; }

 private:
  static std::string format(const std::vector<std::size_t>& mus) {
    std::string out;
    for (std::size_t k = 0; k < mus.size(); ++k) {
      out += (k == 0 ? ": " : ", ");
      out += std::to_string(mus[k]);
    }
    return out;
  }
  std::vector<std::size_t> offending_;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& context, std::size_t expected, std::size_t got)
      : Error(context + ": expected dimension " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

// Zero-norm weights, non-positive temperature, invalid configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace monoplane
