#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fourflow {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A model or operation was evaluated outside its mathematical domain
// (vanishing ray momentum, non-positive refractive index, ...).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Floating-point trouble: non-finite values, failed linear solves, norm drift.
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

// I/O failure (cannot read a scenario file, cannot write an output file).
class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Invalid user input. Carries every issue found, not just the first.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string all;
    for (const auto& s : issues) {
      if (!all.empty()) all += '\n';
      all += s;
    }
    return all;
  }

  std::vector<std::string> issues_;
};

}  // namespace fourflow
