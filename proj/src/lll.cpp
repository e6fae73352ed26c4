#include "mbl/enumeration.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mbl {

namespace {

struct Gso {
  RMatrix mu;       // mu(i, j), j < i
  RVector bstar2;   // ||b*_i||^2
};

Gso gram_schmidt(const RMatrix& B) {
  const int r = static_cast<int>(B.cols());
  Gso g{RMatrix::Zero(r, r), RVector::Zero(r)};
  RMatrix bstar = B;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < i; ++j) {
      g.mu(i, j) = B.col(i).dot(bstar.col(j)) / g.bstar2(j);
      bstar.col(i) -= g.mu(i, j) * bstar.col(j);
    }
    g.bstar2(i) = bstar.col(i).squaredNorm();
    if (!(g.bstar2(i) > 1e-24 * std::max(1.0, B.col(i).squaredNorm()))) {
      throw DegenerateLattice("basis vectors are linearly dependent");
    }
  }
  return g;
}

}  // namespace

LllResult lll_reduce(const RMatrix& B0, double delta, double eta) {
  const int r = static_cast<int>(B0.cols());
  LllResult res{B0, IntMatrix::Identity(r, r), 0};
  if (r == 0) return res;
  RMatrix& B = res.basis;
  IntMatrix& U = res.unimodular;
  Gso g = gram_schmidt(B);

  auto size_reduce = [&](int k) {
    for (int j = k - 1; j >= 0; --j) {
      if (std::abs(g.mu(k, j)) <= eta) continue;
      const double qd = std::round(g.mu(k, j));
      if (std::abs(qd) > 1e15) throw PrecisionFailure("LLL coefficient overflow");
      const long long q = static_cast<long long>(qd);
      B.col(k) -= qd * B.col(j);
      U.col(k) -= q * U.col(j);
      for (int i = 0; i < j; ++i) g.mu(k, i) -= qd * g.mu(j, i);
      g.mu(k, j) -= qd;
    }
  };

  int k = 1;
  int iterations = 0;
  const int max_iterations = 100000 * std::max(1, r);
  while (k < r) {
    if (++iterations > max_iterations) throw PrecisionFailure("LLL did not terminate");
    size_reduce(k);
    const double lhs = g.bstar2(k);
    const double rhs = (delta - g.mu(k, k - 1) * g.mu(k, k - 1)) * g.bstar2(k - 1);
    if (lhs >= rhs) {
      ++k;
      continue;
    }
    B.col(k).swap(B.col(k - 1));
    U.col(k).swap(U.col(k - 1));
    ++res.swaps;
    g = gram_schmidt(B);
    k = std::max(k - 1, 1);
  }
  return res;
}

}  // namespace mbl
