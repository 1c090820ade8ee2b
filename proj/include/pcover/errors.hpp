#pragma once

#include <stdexcept>
#include <string>

namespace pcover {

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed graph or cover text. `line` is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class RetryExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters for which a requested window or budget cannot be met at all.
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReservoirFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CleaningFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcover
