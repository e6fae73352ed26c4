#pragma once

#include <stdexcept>
#include <string>

namespace mbl {

// Base of every failure raised by the library. The CLI maps subclasses to
// exit codes (config/catalog errors -> 2, numerical failures -> 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CatalogInconsistent : public Error {
 public:
  using Error::Error;
};

class NotTotallyComplex : public CatalogInconsistent {
 public:
  using CatalogInconsistent::CatalogInconsistent;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class PrecisionFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateLattice : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularChannel : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptyBall : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BudgetExceeded : public NumericalError {
 public:
  BudgetExceeded(const std::string& what, double best_so_far)
      : NumericalError(what), best_so_far_(best_so_far) {}
  // Best value found before the node budget ran out; an upper bound only.
  double best_so_far() const { return best_so_far_; }

 private:
  double best_so_far_;
};

class CarveFailed : public NumericalError {
 public:
  CarveFailed(const std::string& what, std::size_t best_count)
      : NumericalError(what), best_count_(best_count) {}
  std::size_t best_count() const { return best_count_; }

 private:
  std::size_t best_count_;
};

}  // namespace mbl
