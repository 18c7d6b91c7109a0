#pragma once

#include <stdexcept>
#include <string>

namespace wrinkle {

// Base for every error raised by the library. `code()` is a short stable
// identifier (e.g. "param.order") that the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message);
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Bad input: parameters, grids, configs, preconditions. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A computed quantity failed an internal consistency check. CLI exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace wrinkle
