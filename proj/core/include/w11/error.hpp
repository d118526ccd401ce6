#pragma once

#include <stdexcept>
#include <string>

namespace w11 {

/// Error category; the numeric value doubles as the CLI exit code.
enum class ErrorCategory : int {
  Usage = 1,
  Schema = 2,
  Domain = 3,
  Resolution = 4,
};

const char* to_string(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::Usage, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ErrorCategory::Schema, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::Domain, what) {}
};

/// Grid too coarse for the requested radius, level or layer.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what)
      : Error(ErrorCategory::Resolution, what) {}
};

/// Grid cells do not tile the requested dyadic cubes.
class AlignmentError : public ResolutionError {
 public:
  explicit AlignmentError(const std::string& what) : ResolutionError(what) {}
};

}  // namespace w11
