#pragma once

#include <stdexcept>
#include <string>

namespace ptorus {

/// Argument outside the domain of a coordinate map (slit, half-plane, window shape).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Square-root continuation for the third trace lost track of its branch.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction hit a singular parameter (sinh(λ/2) ≈ 0, |ξ| out of range, overflow).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File I/O failure; message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptorus
