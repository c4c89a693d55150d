#pragma once

#include <stdexcept>
#include <string>

namespace hdrstitch {

enum class ErrorKind {
  kValidation,  // bad input data, geometry or arguments
  kIo,          // file missing or unreadable
  kNumerical,   // solver failed to converge
};

/// Base exception for every failure raised by the library. The kind drives
/// the command-line exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) { return {ErrorKind::kValidation, what}; }
inline Error io_error(const std::string& what) { return {ErrorKind::kIo, what}; }
inline Error numerical_error(const std::string& what) { return {ErrorKind::kNumerical, what}; }

}  // namespace hdrstitch
