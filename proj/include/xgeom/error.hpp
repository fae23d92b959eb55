#pragma once

#include <stdexcept>
#include <string>

namespace xgeom {

// Input that is well formed but lies outside the domain of an operation
// (not a density matrix, parameter out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidDensity : public DomainError {
 public:
  enum class Reason { NotHermitian, TraceNotOne, NotPSD };

  InvalidDensity(Reason reason, double worst);

  Reason reason() const noexcept { return reason_; }
  // Largest Hermiticity defect, |Tr - 1|, or most negative eigenvalue.
  double worst() const noexcept { return worst_; }

 private:
  Reason reason_;
  double worst_;
};

const char* to_string(InvalidDensity::Reason reason) noexcept;

class NotXShaped : public DomainError {
 public:
  NotXShaped(int row, int col, double magnitude);

  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  int row_;
  int col_;
  double magnitude_;
};

class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Internal cross-check between two independent computations failed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xgeom
