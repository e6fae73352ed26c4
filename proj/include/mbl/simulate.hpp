#pragma once

#include "mbl/channel.hpp"
#include "mbl/codebook.hpp"
#include "mbl/lattice.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace mbl {

// Runs body(i) for i in [0, count) on `threads` workers (0: hardware
// concurrency). Callers write results into slot i, so the outcome does not
// depend on scheduling. The first exception is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

struct SimulationConfig {
  std::shared_ptr<const MatrixLattice> lattice;
  FadingModel model;
  double P = 1.0;
  double R = 0.0;  // bits per channel use
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  int carve_trials = 8;
  bool run_ml = true;
  bool run_lattice = true;
  bool noiseless = false;
  // Above this many stored codewords the codebook is kept implicit and only
  // lattice decoding runs.
  std::size_t max_explicit = 1u << 16;
  std::uint64_t budget = kDefaultNodeBudget;
  int threads = 0;
};

struct DecoderTally {
  bool ran = false;
  std::size_t errors = 0;
  std::size_t inexact = 0;    // decodes that hit the node budget
  double total_nodes = 0.0;

  double wer(std::size_t trials) const;
  // Binomial standard error sqrt(p (1 - p) / trials).
  double stderr_(std::size_t trials) const;
};

struct SimulationResult {
  std::string status = "ok";  // ok | carve_failed
  std::string detail;
  bool implicit_codebook = false;
  double codebook_size = 0.0;  // stored codewords (0 when implicit)
  double alpha = 0.0;
  std::size_t trials = 0;
  DecoderTally ml;
  DecoderTally lattice;
};

// Trial t draws its codeword from stream 3t, its channel from stream 3t + 1
// and its noise from stream 3t + 2 of `seed`; the carving shifts use a
// separate seed derived from `seed`. A decision counts as an error whenever
// its lattice coordinates differ from the transmitted ones, including
// lattice-decoder outputs that fall outside the codebook.
SimulationResult simulate(const SimulationConfig& config);

}  // namespace mbl
