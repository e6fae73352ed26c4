#include "mbl/channel.hpp"

#include "mbl/errors.hpp"

#include <cmath>
#include <limits>

namespace mbl {

FadingKind parse_fading_kind(const std::string& s) {
  if (s == "constant") return FadingKind::constant;
  if (s == "iid_rayleigh" || s == "rayleigh") return FadingKind::iid_rayleigh;
  if (s == "gauss_markov") return FadingKind::gauss_markov;
  throw ParseError("unknown fading model '" + s + "'");
}

std::string to_string(FadingKind k) {
  switch (k) {
    case FadingKind::constant:
      return "constant";
    case FadingKind::iid_rayleigh:
      return "iid_rayleigh";
    case FadingKind::gauss_markov:
      return "gauss_markov";
  }
  return "?";
}

void FadingModel::validate() const {
  if (n < 1 || nr < 1) throw DomainError("antenna counts must be >= 1");
  if (kind == FadingKind::constant) {
    if (!fixed_h) throw DomainError("constant fading model needs a fixed H");
    if (fixed_h->rows() != nr || fixed_h->cols() != n) throw ShapeMismatch("fixed H must be nr x n");
  }
  if (kind == FadingKind::gauss_markov && !(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
}

CMatrix rayleigh_block(Rng& rng, int nr, int n) {
  static const double s = std::sqrt(0.5);
  CMatrix H(nr, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < nr; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      H(r, c) = Complex(s * re, s * im);
    }
  }
  return H;
}

ChannelRealization sample(const FadingModel& model, int k, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  return sample(model, k, rng);
}

ChannelRealization sample(const FadingModel& model, int k, Rng& rng) {
  model.validate();
  if (k < 1) throw DomainError("k must be >= 1");
  ChannelRealization out;
  out.seed = rng.seed();
  out.stream = rng.stream();
  out.model = model;
  out.blocks.reserve(k);
  switch (model.kind) {
    case FadingKind::constant:
      for (int i = 0; i < k; ++i) out.blocks.push_back(*model.fixed_h);
      break;
    case FadingKind::iid_rayleigh:
      for (int i = 0; i < k; ++i) out.blocks.push_back(rayleigh_block(rng, model.nr, model.n));
      break;
    case FadingKind::gauss_markov: {
      const double a = model.rho;
      const double b = std::sqrt(1.0 - a * a);
      out.blocks.push_back(rayleigh_block(rng, model.nr, model.n));
      for (int i = 1; i < k; ++i) {
        const CMatrix G = rayleigh_block(rng, model.nr, model.n);
        out.blocks.push_back(a * out.blocks.back() + b * G);
      }
      break;
    }
  }
  return out;
}

CMatrix transmit(const CMatrix& X, const std::vector<CMatrix>& H, Rng* noise, bool noiseless) {
  if (H.empty()) throw ShapeMismatch("no channel blocks");
  const Eigen::Index n = H.front().cols();
  const Eigen::Index nr = H.front().rows();
  const auto k = static_cast<Eigen::Index>(H.size());
  if (X.rows() != n || X.cols() != n * k) throw ShapeMismatch("codeword shape does not match channel");
  CMatrix Y(nr, n * k);
  for (Eigen::Index i = 0; i < k; ++i) Y.middleCols(i * n, n) = H[i] * X.middleCols(i * n, n);
  if (!noiseless) {
    if (!noise) throw DomainError("noisy transmission needs a noise generator");
    Y += rayleigh_block(*noise, static_cast<int>(nr), static_cast<int>(n * k));
  }
  return Y;
}

double logdet_statistic(const std::vector<CMatrix>& H, bool* singular) {
  if (singular) *singular = false;
  if (H.empty()) throw ShapeMismatch("no channel blocks");
  double acc = 0.0;
  for (const auto& Hi : H) {
    const CMatrix G = (Hi.rows() >= Hi.cols()) ? CMatrix(Hi.adjoint() * Hi) : CMatrix(Hi * Hi.adjoint());
    const double det = G.determinant().real();
    if (!(det > 0.0)) {
      if (singular) *singular = true;
      return -std::numeric_limits<double>::infinity();
    }
    acc += std::log2(det);
  }
  return acc / static_cast<double>(H.size());
}

}  // namespace mbl
