#pragma once

#include <stdexcept>
#include <string>

namespace gamelab {

// Schema mismatch, out-of-range element, reused color and similar misuse.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gamelab
