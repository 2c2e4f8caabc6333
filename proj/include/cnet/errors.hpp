#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cnet {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller asked for something ill-formed (bad window, unknown metric, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data is malformed. `line()` is 1-based, 0 when not tied to a line.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cnet
