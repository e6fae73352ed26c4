#pragma once

#include "mbl/types.hpp"

#include <cstdint>
#include <functional>

namespace mbl {

struct LllResult {
  RMatrix basis;   // reduced basis, columns
  IntMatrix unimodular;  // reduced = original * unimodular
  int swaps = 0;
};

// LLL reduction of the columns of B (floating Gram-Schmidt, recomputed after
// each swap). Throws DegenerateLattice when the columns are dependent.
LllResult lll_reduce(const RMatrix& B, double delta = 0.99, double eta = 0.51);

struct ClosestPoint {
  IntVector coords;     // in the basis given to the Enumerator
  double dist2 = 0.0;   // ||B z - t||^2
  std::uint64_t nodes = 0;
  bool exact = true;    // false when the budget ran out (Babai or best found)
};

/// Schnorr-Euchner enumeration over the lattice spanned by the columns of a
/// real m x r basis (m >= r). The basis is LLL-reduced once on construction;
/// all coordinates are reported in the original basis.
class Enumerator {
 public:
  explicit Enumerator(const RMatrix& basis, std::uint64_t budget = 100'000'000);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::uint64_t budget() const { return budget_; }

  // Exact CVP within the budget; on overrun returns the best point found
  // (starting from the Babai point) with exact = false.
  ClosestPoint closest(const RVector& target) const;

  // Shortest nonzero vector. Throws BudgetExceeded on overrun.
  ClosestPoint shortest() const;

  // Calls visit(coords, dist2) for every lattice point with
  // ||B z - center||^2 <= radius2, in no particular order. Returns the node
  // count. Throws BudgetExceeded on overrun.
  std::uint64_t for_each_in_ball(const RVector& center, double radius2,
                                 const std::function<void(const IntVector&, double)>& visit) const;

  // Babai nearest-plane point on the reduced basis.
  ClosestPoint babai(const RVector& target) const;

  // Coordinates of an arbitrary vector in the original basis (least squares).
  RVector solve(const RVector& v) const;

  // Upper bound on the covering radius within the span:
  // (1/2) sqrt(sum_i r_ii^2) over the reduced Gram-Schmidt lengths.
  double covering_radius_bound() const;

 private:
  // Projects target onto the span: returns y = Q^T t and the squared norm of
  // the orthogonal residual.
  RVector project(const RVector& target, double* residual2) const;
  IntVector to_original(const IntVector& reduced_coords) const;

  int dim_ = 0;
  int rank_ = 0;
  std::uint64_t budget_;
  RMatrix basis_;        // original
  RMatrix reduced_;      // LLL-reduced
  IntMatrix unimodular_;
  RMatrix q_;            // dim x rank, orthonormal columns
  RMatrix r_;            // rank x rank upper triangular, positive diagonal
};

}  // namespace mbl
