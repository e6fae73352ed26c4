#include "mbl/simulate.hpp"

#include "mbl/decoder.hpp"
#include "mbl/errors.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace mbl {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        stop = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double DecoderTally::wer(std::size_t trials) const {
  return trials ? static_cast<double>(errors) / trials : 0.0;
}

double DecoderTally::stderr_(std::size_t trials) const {
  if (!trials) return 0.0;
  const double p = wer(trials);
  return std::sqrt(p * (1.0 - p) / trials);
}

namespace {

constexpr std::uint64_t kCarveSeedMix = 0x9e3779b97f4a7c15ULL;

struct TrialOutcome {
  bool ml_error = false;
  bool lat_error = false;
  bool lat_inexact = false;
  std::uint64_t lat_nodes = 0;
};

std::size_t uniform_index(Rng& rng, std::size_t size) {
  // Rejection keeps the index exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % size);
  for (;;) {
    const std::uint64_t v = rng.next_u64();
    if (v < limit) return static_cast<std::size_t>(v % size);
  }
}

}  // namespace

SimulationResult simulate(const SimulationConfig& cfg) {
  if (!cfg.lattice) throw DomainError("simulate needs a lattice");
  cfg.model.validate();
  const MatrixLattice& L = *cfg.lattice;
  const BlockShape& s = L.shape();
  if (s.rows != cfg.model.n || s.n != cfg.model.n) throw ShapeMismatch("lattice block size must equal n");
  if (cfg.trials == 0) throw DomainError("need at least one trial");

  SimulationResult out;
  out.trials = cfg.trials;
  const double nk = static_cast<double>(s.n) * s.k;
  const std::uint64_t carve_seed = cfg.seed ^ kCarveSeedMix;
  const bool implicit = std::exp2(std::ceil(cfg.R * nk) + 2.0) > static_cast<double>(cfg.max_explicit);
  out.implicit_codebook = implicit;

  std::optional<Codebook> book;
  std::optional<ImplicitCodebook> implicit_book;
  double alpha = 0.0;
  CMatrix shift;
  if (implicit) {
    implicit_book.emplace(cfg.lattice, cfg.P, cfg.R, carve_seed, cfg.budget);
    alpha = implicit_book->alpha();
    shift = implicit_book->code_lattice().shift();
  } else {
    try {
      CarveOptions opt;
      opt.budget = cfg.budget;
      book = carve(cfg.lattice, cfg.P, cfg.R, cfg.carve_trials, carve_seed, opt);
    } catch (const CarveFailed& e) {
      out.status = "carve_failed";
      out.detail = e.what();
      return out;
    }
    alpha = book->alpha;
    shift = book->shift;
    out.codebook_size = static_cast<double>(book->size());
  }
  out.alpha = alpha;
  const bool run_ml = cfg.run_ml && book.has_value();
  const bool run_lat = cfg.run_lattice;
  out.ml.ran = run_ml;
  out.lattice.ran = run_lat;

  // A constant channel needs only one decoder.
  std::optional<LatticeDecoder> fixed_decoder;
  const bool constant = cfg.model.kind == FadingKind::constant;
  if (constant && run_lat) {
    const ChannelRealization h = sample(cfg.model, s.k, cfg.seed, 1);
    fixed_decoder.emplace(L, alpha, shift, h.blocks, cfg.budget);
  }

  std::vector<TrialOutcome> results(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    Rng pick(cfg.seed, 3 * t);
    IntVector z;
    CMatrix X;
    if (book) {
      const std::size_t idx = uniform_index(pick, book->size());
      z = book->coords[idx];
      X = book->codewords[idx];
    } else {
      z = implicit_book->sample(pick);
      X = implicit_book->code_lattice().point(z);
    }
    const ChannelRealization h = sample(cfg.model, s.k, cfg.seed, 3 * t + 1);
    Rng noise(cfg.seed, 3 * t + 2);
    const CMatrix Y = transmit(X, h.blocks, &noise, cfg.noiseless);
    TrialOutcome& r = results[t];
    if (run_ml) r.ml_error = ml_decode(Y, h.blocks, *book).coords != z;
    if (run_lat) {
      const DecodeResult d = constant ? fixed_decoder->decode(Y) : LatticeDecoder(L, alpha, shift, h.blocks, cfg.budget).decode(Y);
      r.lat_error = d.coords != z;
      r.lat_inexact = !d.exact;
      r.lat_nodes = d.nodes;
    }
  });

  for (const auto& r : results) {
    out.ml.errors += r.ml_error;
    out.lattice.errors += r.lat_error;
    out.lattice.inexact += r.lat_inexact;
    out.lattice.total_nodes += static_cast<double>(r.lat_nodes);
  }
  out.ml.total_nodes = run_ml ? out.codebook_size * cfg.trials : 0.0;
  return out;
}

}  // namespace mbl
