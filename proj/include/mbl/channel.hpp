#pragma once

#include "mbl/rng.hpp"
#include "mbl/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mbl {

enum class FadingKind { constant, iid_rayleigh, gauss_markov };

FadingKind parse_fading_kind(const std::string& s);
std::string to_string(FadingKind k);

struct FadingModel {
  FadingKind kind = FadingKind::iid_rayleigh;
  int n = 1;   // transmit antennas
  int nr = 1;  // receive antennas
  std::optional<CMatrix> fixed_h;  // constant model, nr x n
  double rho = 0.0;                // gauss_markov, in [0, 1)

  // Throws DomainError / ShapeMismatch on invalid parameters.
  void validate() const;
};

struct ChannelRealization {
  std::vector<CMatrix> blocks;  // H_1..H_k, each nr x n
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  FadingModel model;
};

// nr x n matrix of CN(0, 1) entries (real and imaginary parts each N(0, 1/2)).
CMatrix rayleigh_block(Rng& rng, int nr, int n);

// Deterministic in (model, k, seed, stream).
ChannelRealization sample(const FadingModel& model, int k, std::uint64_t seed, std::uint64_t stream = 0);
ChannelRealization sample(const FadingModel& model, int k, Rng& rng);

// Y_i = H_i X_i + W_i, W_i i.i.d. CN(0, 1). X is n x nk (k = blocks.size()).
CMatrix transmit(const CMatrix& X, const std::vector<CMatrix>& H, Rng* noise, bool noiseless = false);

// (1/k) sum_i log2 det G_i with G_i = H_i^dagger H_i when nr >= n and
// H_i H_i^dagger otherwise. Returns -infinity (and sets *singular) when some
// G_i is singular.
double logdet_statistic(const std::vector<CMatrix>& H, bool* singular = nullptr);

}  // namespace mbl
