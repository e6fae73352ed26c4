#pragma once

#include "mbl/channel.hpp"
#include "mbl/types.hpp"

#include <cstdint>

namespace mbl {

// Martinet constant G.
inline constexpr double kMartinetG = 92.368;
// Asymptotic Odlyzko bound on root discriminants.
inline constexpr double kOdlyzkoRootDisc = 22.3;

// Lattice volume constants C_L for the rate formulas.
double c_l_martinet(int n);        // 23^{(n-1)/(10n)} G / 2
double c_l_odlyzko();              // 22.3 / 2
double c_l_minkowski_hlawka();     // pi e / 4 * 4 = pi e: gives the 2-bit gap

// Gap terms (bits) between log2(P e^{-gamma}) and the SISO rate.
double gap_martinet_siso();        // log2(2G / pi e)
double gap_odlyzko_siso();         // log2(44.6 / pi e)
double gap_minkowski_hlawka();     // log2(4 C_L / pi e) at C_L = pi e: 2

// E[log2 det H^dagger H] = sum_{j=nr-n+1}^{nr} psi(j) / ln 2 (nr >= n).
double expected_logdet_rayleigh(int n, int nr);

// mu + n (log P - log C_L + log(pi e / 4 n^2)), bits.
double rate_theorem1(double mu, double P, int n, double C_L);
// mu + nr (log P - 2) + (n - nr) log(n - nr) + n log(pi e / (n^2 C_L)); nr < n.
double rate_theorem2(double mu, double P, int n, int nr, double C_L);
// Constant-channel rate: log det((P/n) G) - n log C_L + n log(pi e / 4n) for
// nr >= n (G = H^dagger H), and log det((P/n) H H^dagger) - 2 nr
// - (n - nr) log(n / (n - nr)) + n log(pi e / (n C_L)) for nr < n.
double rate_slow_fading(const CMatrix& H, double P, double C_L);
// n (log((P/n) e^{(1/n) sum psi}) + log(pi e / 2n) - log(23^{(1-1/n)/10} G)), nr = n.
double rate_corollary4(double P, int n);

// log2 det(I + (P/n) H^dagger H).
double white_input_capacity(const CMatrix& H, double P);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

// Monte Carlo E[log2 det(I + (P/n) H^dagger H)]; sample s is block 1 of
// realization stream s, so every model contributes its marginal law.
McEstimate ergodic_capacity_mc(const FadingModel& model, double P, std::size_t samples, std::uint64_t seed);

// Monte Carlo E[log2 det H^dagger H] (or H H^dagger when nr < n).
McEstimate logdet_mc(const FadingModel& model, std::size_t samples, std::uint64_t seed);

// Solves delta = sum_{l=nr-n+1}^{nr} (psi(l) - psi(l - v)) for v by
// bisection on (0, nr - n + 1). delta in nats. DomainError when unreachable.
double chernoff_vdelta(int n, int nr, double delta);
// Residual of the v_delta equation at v.
double chernoff_vdelta_residual(int n, int nr, double delta, double v);
// K = -sum_{j=nr-n+1}^{nr} (v psi(j - v) - ln Gamma(j) + ln Gamma(j - v)).
double chernoff_exponent(int n, int nr, double delta);

// P{ (1/k) sum_i ln |h_i|^2 < -gamma - delta } for i.i.d. CN(0,1) h_i,
// estimated from `paths` independent paths.
McEstimate siso_lower_tail_mc(int k, double delta, std::size_t paths, std::uint64_t seed);

}  // namespace mbl
