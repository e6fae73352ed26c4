#pragma once

#include <array>
#include <cstdint>

namespace mbl {

// Philox4x32-10 block function: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based stream. (seed, stream) select an independent sequence; the
/// n-th output depends only on (seed, stream, n), so results do not depend on
/// thread scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform in (0, 1): 53 random bits, never 0 or 1.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Exp(1).
  double exponential();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mbl
