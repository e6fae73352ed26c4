#pragma once

#include "mbl/enumeration.hpp"
#include "mbl/lattice.hpp"
#include "mbl/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

namespace mbl {

// ln C_{n,k} with C_{n,k} = (pi n k)^{n^2 k} / (n^2 k)!.
double log_c_nk(int n, int k);

// alpha with alpha^2 = C_{n,k}^{1/(n^2 k)} P / (2^{R/n} vol^{1/(n^2 k)}).
double scaling_alpha(double P, double R, int n, int k, double volume);

// Volume of the real d-dimensional ball of the given radius.
double ball_volume(int dim, double radius);

/// shift + alpha L with an Enumerator for alpha L. Coordinates are always
/// integer coordinates in the basis of L.
class ShiftedLattice {
 public:
  ShiftedLattice(std::shared_ptr<const MatrixLattice> L, double alpha, CMatrix shift,
                 std::uint64_t budget = kDefaultNodeBudget);

  const MatrixLattice& lattice() const { return *lattice_; }
  std::shared_ptr<const MatrixLattice> lattice_ptr() const { return lattice_; }
  double alpha() const { return alpha_; }
  const CMatrix& shift() const { return shift_; }
  const Enumerator& enumerator() const { return enumerator_; }

  CMatrix point(const IntVector& z) const;
  // Nearest point of the shifted lattice to X (unfaded metric).
  ClosestPoint nearest(const CMatrix& X) const;
  // Calls visit(z, ||X||^2) for every point X with ||X||^2 <= radius2
  // (the comparison is on the recomputed energy). Returns the count.
  std::size_t for_each_in_ball(double radius2, const std::function<void(const IntVector&, double)>& visit) const;
  std::size_t count_in_ball(double radius2) const;

 private:
  std::shared_ptr<const MatrixLattice> lattice_;
  double alpha_;
  CMatrix shift_;
  RVector shift_real_;
  Enumerator enumerator_;
};

// Uniform point of the fundamental parallelotope of alpha L.
CMatrix random_shift(const MatrixLattice& L, double alpha, Rng& rng);

struct CarveOptions {
  std::uint64_t budget = kDefaultNodeBudget;
  // Keep at most 2^{ceil(R nk) + 2} lowest-energy codewords.
  bool truncate = true;
};

struct Codebook {
  std::shared_ptr<const MatrixLattice> lattice;
  double alpha = 0.0;
  CMatrix shift;
  double power = 0.0;
  double rate_target = 0.0;
  std::vector<CMatrix> codewords;
  std::vector<IntVector> coords;
  std::size_t points_in_ball = 0;  // before truncation
  bool truncated = false;
  int best_trial = -1;
  double mean_count = 0.0;  // average count over the sampled shifts

  std::size_t size() const { return codewords.size(); }
  // log2 |C| / (nk) of the stored codebook.
  double realized_rate() const;
};

// Samples `trials` shifts (stream t of `seed` for trial t), keeps the one
// with the most points of shift + alpha L in B(sqrt(P n k)). Throws
// CarveFailed when the best count stays below 2^{floor(R n k)}.
Codebook carve(std::shared_ptr<const MatrixLattice> L, double P, double R, int trials, std::uint64_t seed,
               const CarveOptions& options = {});

void write_codebook(std::ostream& out, const Codebook& C);

/// Codebook too large to list: the points of shift + alpha L inside
/// B(sqrt(P n k)). sample() returns each of them with equal probability.
class ImplicitCodebook {
 public:
  ImplicitCodebook(std::shared_ptr<const MatrixLattice> L, double P, double R, std::uint64_t shift_seed,
                   std::uint64_t budget = kDefaultNodeBudget);

  const ShiftedLattice& code_lattice() const { return shifted_; }
  double alpha() const { return shifted_.alpha(); }
  double power() const { return power_; }
  double rate_target() const { return rate_; }
  double radius2() const { return radius2_; }

  static constexpr int kMaxAttempts = 1'000'000;

  // Coordinates of a uniformly drawn codeword; throws EmptyBall after
  // kMaxAttempts rejections.
  IntVector sample(Rng& rng) const;

 private:
  double power_;
  double rate_;
  double radius2_;
  ShiftedLattice shifted_;
};

}  // namespace mbl
