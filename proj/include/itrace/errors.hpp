#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itrace {

// Base of every error the engine reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error("not found: " + what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid argument: " + what) {}
};

class InvalidPath : public Error {
 public:
  explicit InvalidPath(const std::string& what) : Error("invalid path: " + what) {}
};

class InvalidState : public Error {
 public:
  explicit InvalidState(const std::string& what) : Error("invalid state: " + what) {}
};

class GenerationFailed : public Error {
 public:
  explicit GenerationFailed(const std::string& what) : Error("generation failed: " + what) {}
};

// Carries the zero-based index of the offending script command.
class ReplayError : public Error {
 public:
  ReplayError(std::size_t index, const std::string& what)
      : Error("command " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace itrace
