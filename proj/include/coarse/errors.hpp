#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coarse {

/// Malformed or inconsistent input. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A checked invariant that the algorithms guarantee failed to hold.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace coarse
