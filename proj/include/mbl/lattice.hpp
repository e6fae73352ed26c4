#pragma once

#include "mbl/types.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mbl {

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

// (Re, Im) interleaved per entry, column-major:
// index 2 * (col * rows + row) + {0 for Re, 1 for Im}.
RVector realify(const CMatrix& X);
CMatrix complexify(const RVector& v, int rows, int cols);

/// Lattice of rank r spanned by matrices B_1..B_r in M_{rows x nk}(C), with
/// inner product Re Tr(X Y^dagger). Immutable.
class MatrixLattice {
 public:
  // Throws ShapeMismatch on inconsistent sizes and DegenerateLattice when the
  // Gram matrix is numerically singular (min eigenvalue <= 1e-10 * max).
  MatrixLattice(BlockShape shape, std::vector<CMatrix> basis);

  const BlockShape& shape() const { return shape_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  bool full_rank() const { return rank() == shape_.real_dim(); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  // real_dim x rank, column j = realify(B_j).
  const RMatrix& real_basis() const { return real_basis_; }
  const RMatrix& gram() const { return gram_; }
  double volume() const { return std::exp(log_volume_); }
  double log_volume() const { return log_volume_; }

  CMatrix point(const IntVector& coords) const;
  CMatrix point(const RVector& coords) const;

  MatrixLattice scaled(double alpha) const;

 private:
  BlockShape shape_;
  std::vector<CMatrix> basis_;
  RMatrix real_basis_;
  RMatrix gram_;
  double log_volume_ = 0.0;
};

// Block i of a multiblock matrix (columns [i*n, (i+1)*n)).
CMatrix block(const CMatrix& X, const BlockShape& shape, int i);

// Pi_i det X_i (square blocks only).
Complex pdet(const CMatrix& X, const BlockShape& shape);

// Multiplies each block on the left: (H_1 X_1, ..., H_k X_k).
CMatrix apply_blocks(const std::vector<CMatrix>& H, const CMatrix& X, const BlockShape& shape);

// Lattice with basis (H_1 B_{j,1}, ..., H_k B_{j,k}). H_i are rows' x n.
// Throws SingularChannel when some H_i has rank < n (|det| <= 1e-12 when
// square, smallest singular value <= 1e-12 otherwise).
MatrixLattice fade(const MatrixLattice& L, const std::vector<CMatrix>& H);

struct HadamardSides {
  double abs_pdet = 0.0;
  double bound = 0.0;  // ||X||^{nk} / (nk)^{nk/2}
};
HadamardSides hadamard_check(const CMatrix& X, const BlockShape& shape);

enum class Form { f1, f2, f3 };
// f1 = sum |x_ij|^2, f2 = prod |x_i| (n = 1 only), f3 = prod |det X_i|.
double form_eval(Form form, const CMatrix& X, const BlockShape& shape);
// Degree of homogeneity under X -> a X.
int form_degree(Form form, const BlockShape& shape);

struct ShortestVector {
  double norm2 = 0.0;
  IntVector coords;
  std::uint64_t nodes = 0;
};

struct HermiteResult {
  double hermite = 0.0;  // min ||X||^2 / Vol^{2/r}
  ShortestVector witness;
};

// Throws BudgetExceeded (best-so-far hermite value) when the node budget runs out.
HermiteResult hermite_invariant(const MatrixLattice& L, std::uint64_t budget = kDefaultNodeBudget);

struct MinPdetResult {
  double value = 0.0;  // upper bound on det_min(L)
  double radius = 0.0;
  IntVector coords;
  std::size_t points = 0;  // nonzero points examined
};

// min |pdet X| over nonzero lattice points with ||X|| <= radius.
// Throws EmptyBall when the ball holds no nonzero point.
MinPdetResult min_pdet(const MatrixLattice& L, double radius, std::uint64_t budget = kDefaultNodeBudget);

// det_min / Vol^{nk/r}.
double normalized_min_det(const MatrixLattice& L, double det_min);

// nk * delta^{2/nk}.
double reduced_hermite_lower(const BlockShape& shape, double delta);

// Block list c * X_i^{-1} with c = |pdet X|^{1/(nk)}, so |pdet| of the result
// is 1 and every faded block of X is c times the identity.
std::vector<CMatrix> adversarial_fade(const CMatrix& X, const BlockShape& shape);

enum class DetMinCertificate { algebraic, enumeration };

struct InvariantReport {
  double volume = 0.0;
  double hermite = 0.0;
  IntVector shortest_vector;
  double det_min = 0.0;
  DetMinCertificate certificate = DetMinCertificate::enumeration;
  double det_min_radius = 0.0;
  double delta = 0.0;
  double rh_lower = 0.0;
};

// When algebraic_det_min is set it is used as det_min (certified); the ball
// search still runs, as a consistency probe, and must not go below it.
InvariantReport compute_invariants(const MatrixLattice& L, double pdet_radius, std::optional<double> algebraic_det_min,
                                   std::uint64_t budget = kDefaultNodeBudget);

std::string to_string(DetMinCertificate c);

}  // namespace mbl
