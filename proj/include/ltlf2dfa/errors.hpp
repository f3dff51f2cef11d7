#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula or trace text that does not follow the grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Invalid encoding configuration, e.g. the bnf/sloppy combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (states, nodes, traces, bits) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A deadline expired while an algorithm was running.
class Timeout : public BudgetExceeded {
 public:
  Timeout() : BudgetExceeded("deadline exceeded") {}
};

}  // namespace ltlf
