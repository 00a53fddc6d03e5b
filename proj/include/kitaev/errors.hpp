#pragma once

#include <stdexcept>
#include <string>

namespace kitaev {

/// Invalid caller-supplied value (bad coordinate, off-grid wave number, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A checked invariant failed. Carries the invariant name and the measured
/// deviation so front ends can serialize the failure.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string invariant, double deviation, const std::string& detail = "")
      : std::runtime_error(invariant + ": deviation " + std::to_string(deviation) +
                           (detail.empty() ? "" : " (" + detail + ")")),
        invariant_(std::move(invariant)),
        deviation_(deviation) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double deviation() const noexcept { return deviation_; }

 private:
  std::string invariant_;
  double deviation_;
};

/// Problem size exceeds a hard resource cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical backend failure (eigensolver non-convergence and the like).
class ComputationalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed command line or config file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kitaev
