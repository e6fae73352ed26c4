#include "mbl/ratecalc.hpp"

#include "mbl/errors.hpp"
#include "mbl/special.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

namespace mbl {

namespace {

McEstimate finish(double sum, double sum2, std::size_t m) {
  McEstimate e;
  e.samples = m;
  e.mean = sum / m;
  if (m > 1) {
    const double var = std::max(0.0, (sum2 - sum * e.mean) / (m - 1));
    e.stderr_ = std::sqrt(var / m);
  }
  return e;
}

// log2 det of a Hermitian positive definite matrix.
double log2det_hpd(const CMatrix& G) {
  Eigen::LLT<CMatrix> llt(G);
  if (llt.info() != Eigen::Success) throw SingularChannel("Gram matrix is not positive definite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i) s += std::log2(std::real(llt.matrixL()(i, i)));
  return 2.0 * s;
}

void check_p(double P) {
  if (!(P > 0)) throw DomainError("power must be positive");
}

}  // namespace

double c_l_martinet(int n) { return std::pow(23.0, (n - 1.0) / (10.0 * n)) * kMartinetG / 2.0; }
double c_l_odlyzko() { return kOdlyzkoRootDisc / 2.0; }
double c_l_minkowski_hlawka() { return kPi * kE; }

double gap_martinet_siso() { return std::log2(2.0 * kMartinetG / (kPi * kE)); }
double gap_odlyzko_siso() { return std::log2(2.0 * kOdlyzkoRootDisc / (kPi * kE)); }
double gap_minkowski_hlawka() { return std::log2(4.0 * c_l_minkowski_hlawka() / (kPi * kE)); }

double expected_logdet_rayleigh(int n, int nr) {
  if (n < 1 || nr < n) throw DomainError("expected_logdet_rayleigh needs nr >= n >= 1");
  double s = 0.0;
  for (int j = nr - n + 1; j <= nr; ++j) s += digamma(j);
  return s / kLn2;
}

double rate_theorem1(double mu, double P, int n, double C_L) {
  check_p(P);
  if (n < 1 || !(C_L > 0)) throw DomainError("rate_theorem1: invalid arguments");
  return mu + n * (std::log2(P) - std::log2(C_L) + std::log2(kPi * kE / (4.0 * n * n)));
}

double rate_theorem2(double mu, double P, int n, int nr, double C_L) {
  check_p(P);
  if (nr < 1 || nr >= n || !(C_L > 0)) throw DomainError("rate_theorem2 needs 1 <= nr < n");
  return mu + nr * (std::log2(P) - 2.0) + (n - nr) * std::log2(static_cast<double>(n - nr)) +
         n * std::log2(kPi * kE / (static_cast<double>(n) * n * C_L));
}

double rate_slow_fading(const CMatrix& H, double P, double C_L) {
  check_p(P);
  if (!(C_L > 0)) throw DomainError("C_L must be positive");
  const int nr = static_cast<int>(H.rows());
  const int n = static_cast<int>(H.cols());
  if (n < 1 || nr < 1) throw ShapeMismatch("empty channel matrix");
  const double pn = P / n;
  if (nr >= n) {
    const CMatrix G = H.adjoint() * H;
    return n * std::log2(pn) + log2det_hpd(G) - n * std::log2(C_L) + n * std::log2(kPi * kE / (4.0 * n));
  }
  const CMatrix G = H * H.adjoint();
  return nr * std::log2(pn) + log2det_hpd(G) - 2.0 * nr -
         (n - nr) * std::log2(static_cast<double>(n) / (n - nr)) + n * std::log2(kPi * kE / (n * C_L));
}

double rate_corollary4(double P, int n) {
  check_p(P);
  if (n < 1) throw DomainError("n must be positive");
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += digamma(j);
  const double first = std::log2(P / n) + s / (n * kLn2);
  const double last = std::log2(std::pow(23.0, (1.0 - 1.0 / n) / 10.0) * kMartinetG);
  return n * (first + std::log2(kPi * kE / (2.0 * n)) - last);
}

double white_input_capacity(const CMatrix& H, double P) {
  check_p(P);
  const Eigen::Index n = H.cols();
  const CMatrix G = CMatrix::Identity(n, n) + (P / n) * (H.adjoint() * H);
  return log2det_hpd(G);
}

McEstimate ergodic_capacity_mc(const FadingModel& model, double P, std::size_t samples, std::uint64_t seed) {
  model.validate();
  if (samples == 0) throw DomainError("need at least one sample");
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ChannelRealization h = sample(model, 1, seed, s);
    const double c = white_input_capacity(h.blocks.front(), P);
    sum += c;
    sum2 += c * c;
  }
  return finish(sum, sum2, samples);
}

McEstimate logdet_mc(const FadingModel& model, std::size_t samples, std::uint64_t seed) {
  model.validate();
  if (samples == 0) throw DomainError("need at least one sample");
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ChannelRealization h = sample(model, 1, seed, s);
    bool singular = false;
    const double v = logdet_statistic(h.blocks, &singular);
    if (singular) throw SingularChannel("sampled a singular channel block");
    sum += v;
    sum2 += v * v;
  }
  return finish(sum, sum2, samples);
}

double chernoff_vdelta_residual(int n, int nr, double delta, double v) {
  double s = 0.0;
  for (int l = nr - n + 1; l <= nr; ++l) s += digamma(l) - digamma(l - v);
  return s - delta;
}

double chernoff_vdelta(int n, int nr, double delta) {
  if (n < 1 || nr < n) throw DomainError("chernoff_vdelta needs nr >= n >= 1");
  if (!(delta > 0)) throw DomainError("delta must be positive");
  double lo = 0.0;
  double hi = (nr - n + 1) - 1e-12;
  if (!(chernoff_vdelta_residual(n, nr, delta, hi) > 0)) throw DomainError("delta is out of reach");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (chernoff_vdelta_residual(n, nr, delta, mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  const double v = 0.5 * (lo + hi);
  if (std::abs(chernoff_vdelta_residual(n, nr, delta, v)) >= 1e-10) {
    throw PrecisionFailure("v_delta bisection did not converge");
  }
  return v;
}

double chernoff_exponent(int n, int nr, double delta) {
  const double v = chernoff_vdelta(n, nr, delta);
  double s = 0.0;
  for (int j = nr - n + 1; j <= nr; ++j) s += v * digamma(j - v) - log_gamma(j) + log_gamma(j - v);
  return -s;
}

McEstimate siso_lower_tail_mc(int k, double delta, std::size_t paths, std::uint64_t seed) {
  if (k < 1 || paths == 0) throw DomainError("siso_lower_tail_mc: invalid arguments");
  const double threshold = -kEulerGamma - delta;
  std::size_t hits = 0;
  for (std::size_t p = 0; p < paths; ++p) {
    Rng rng(seed, p);
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += std::log(rng.exponential());
    if (s / k < threshold) ++hits;
  }
  const double h = static_cast<double>(hits);
  return finish(h, h, paths);
}

}  // namespace mbl
