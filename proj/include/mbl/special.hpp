#pragma once

namespace mbl {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kE = 2.71828182845904523536028747135266250;
inline constexpr double kLn2 = 0.69314718055994530941723212145817657;

/// Digamma function psi(x) = d/dx ln Gamma(x) for x > 0.
///
/// Shifts the argument up with psi(x) = psi(x+1) - 1/x until x >= 8 and then
/// sums the asymptotic series in 1/x^2. Absolute error is below 1e-12 on the
/// whole positive axis. Throws DomainError for x <= 0 or NaN.
double digamma(double x);

/// ln Gamma(x) for x > 0 via the Lanczos approximation (g = 7, 9 terms),
/// with the reflection formula below 1/2.
double log_gamma(double x);

}  // namespace mbl
