#pragma once

#include "mbl/codebook.hpp"
#include "mbl/enumeration.hpp"
#include "mbl/lattice.hpp"

#include <cstdint>
#include <vector>

namespace mbl {

struct DecodeResult {
  IntVector coords;        // lattice coordinates of the decision
  std::size_t index = 0;   // codeword index (ml_decode only)
  double metric = 0.0;     // sum_i ||Y_i - H_i X_i||^2
  std::uint64_t nodes = 0;
  bool exact = true;       // false: budget overrun, Babai/best-found point
};

// sum_i ||Y_i - H_i X_i||^2.
double faded_metric(const CMatrix& Y, const std::vector<CMatrix>& H, const CMatrix& X, const BlockShape& shape);

// argmin over the codebook; ties go to the lowest index.
DecodeResult ml_decode(const CMatrix& Y, const std::vector<CMatrix>& H, const Codebook& C);

/// Naive lattice decoder for a fixed channel: closest point of
/// H (shift + alpha L) to Y. Build once per channel realization.
class LatticeDecoder {
 public:
  LatticeDecoder(const MatrixLattice& L, double alpha, const CMatrix& shift, const std::vector<CMatrix>& H,
                 std::uint64_t budget = kDefaultNodeBudget);

  DecodeResult decode(const CMatrix& Y) const;

 private:
  BlockShape shape_;
  std::vector<CMatrix> H_;
  CMatrix faded_shift_;
  Enumerator enumerator_;
  MatrixLattice lattice_;
  double alpha_;
  CMatrix shift_;
};

// One-shot wrapper. Requires nr >= n and full-rank blocks (SingularChannel).
DecodeResult lattice_decode(const CMatrix& Y, const std::vector<CMatrix>& H, double alpha, const MatrixLattice& L,
                            const CMatrix& shift, std::uint64_t budget = kDefaultNodeBudget);

struct QrReduced {
  CMatrix Y;               // n x nk, blocks (Q_i')^dagger Y_i
  std::vector<CMatrix> R;  // n x n upper triangular, positive real diagonal
  std::vector<CMatrix> Q;  // nr x n, orthonormal columns
};

// Thin QR per block, H_i = Q_i' R_i'. Throws SingularChannel on rank deficiency.
QrReduced qr_reduce(const CMatrix& Y, const std::vector<CMatrix>& H);

// sum_j lambda_j l_j with lambda = eigenvalues of H^dagger H ascending and
// l = eigenvalues of X X^dagger descending; a lower bound on ||H X||^2.
double mismatched_bound(const CMatrix& H, const CMatrix& X);

}  // namespace mbl
