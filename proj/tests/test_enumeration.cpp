#include "brute_force.hpp"
#include "mbl/enumeration.hpp"
#include "mbl/errors.hpp"

#include <doctest.h>

#include <random>

using namespace mbl;

namespace {

// Gaussian basis with condition number below 10, so the exhaustive box stays small.
RMatrix random_basis(std::mt19937_64& g, int m, int r) {
  std::normal_distribution<double> N(0, 1);
  for (;;) {
    RMatrix B(m, r);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < r; ++j) B(i, j) = N(g);
    }
    const Eigen::JacobiSVD<RMatrix> svd(B);
    const auto& sv = svd.singularValues();
    if (sv(0) < 10 * sv(sv.size() - 1)) return B;
  }
}

RVector random_target(std::mt19937_64& g, int m, double scale) {
  std::uniform_real_distribution<double> U(-scale, scale);
  RVector t(m);
  for (int i = 0; i < m; ++i) t(i) = U(g);
  return t;
}

}  // namespace

TEST_CASE("LLL output is unimodular, size reduced and Lovasz reduced") {
  std::mt19937_64 g(1);
  for (int r = 2; r <= 8; ++r) {
    std::normal_distribution<double> N(0, 1);
    RMatrix B(r + 1, r);
    for (int i = 0; i <= r; ++i) {
      for (int j = 0; j < r; ++j) B(i, j) = N(g);
    }
    // Skew the basis so that reduction has work to do.
    for (int j = 1; j < r; ++j) B.col(j) += 7.0 * B.col(j - 1);
    const LllResult res = lll_reduce(B);
    const Eigen::MatrixXd U = res.unimodular.cast<double>();
    CHECK(std::abs(std::abs(U.determinant()) - 1.0) < 1e-6);
    CHECK((B * U - res.basis).norm() < 1e-8 * B.norm());
    // Gram-Schmidt of the output, computed here.
    const RMatrix& R = res.basis;
    RMatrix bs = R;
    RMatrix mu = RMatrix::Zero(r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < i; ++j) {
        mu(i, j) = R.col(i).dot(bs.col(j)) / bs.col(j).squaredNorm();
        bs.col(i) -= mu(i, j) * bs.col(j);
      }
    }
    for (int i = 1; i < r; ++i) {
      for (int j = 0; j < i; ++j) CHECK(std::abs(mu(i, j)) <= 0.51 + 1e-9);
      CHECK(bs.col(i).squaredNorm() >= (0.99 - mu(i, i - 1) * mu(i, i - 1)) * bs.col(i - 1).squaredNorm() - 1e-9);
    }
  }
  RMatrix dep(3, 2);
  dep << 1, 2, 1, 2, 1, 2;
  CHECK_THROWS_AS(lll_reduce(dep), DegenerateLattice);
}

TEST_CASE("closest point matches exhaustive search") {
  std::mt19937_64 g(2);
  for (int r = 1; r <= 6; ++r) {
    const int m = r + (r % 2);
    const RMatrix B = random_basis(g, m, r);
    const Enumerator E(B);
    for (int t = 0; t < 100; ++t) {
      const RVector target = random_target(g, m, 4.0);
      const ClosestPoint cp = E.closest(target);
      const brute::Closest bf = brute::closest(B, target);
      CHECK(cp.exact);
      CHECK(std::abs(cp.dist2 - bf.dist2) <= 1e-9 * (1 + bf.dist2));
      const double cp_d = (B * cp.coords.cast<double>() - target).squaredNorm();
      CHECK(std::abs(cp_d - cp.dist2) <= 1e-9 * (1 + cp_d));
      if (bf.second - bf.dist2 > 1e-9 * (1 + bf.dist2)) {
        for (int j = 0; j < r; ++j) CHECK(cp.coords(j) == bf.z[j]);
      }
    }
  }
}

TEST_CASE("shortest vector matches exhaustive search") {
  std::mt19937_64 g(3);
  for (int r = 2; r <= 6; ++r) {
    const RMatrix B = random_basis(g, r, r);
    const ClosestPoint sv = Enumerator(B).shortest();
    CHECK(sv.coords.cwiseAbs().sum() > 0);
    double best = std::numeric_limits<double>::infinity();
    const RVector zero = RVector::Zero(r);
    const Eigen::MatrixXd P = brute::pseudo_inverse(B);
    const double radius = B.colwise().norm().minCoeff();
    brute::walk(B, zero, brute::box_around(P, zero, radius), [&](const std::vector<long long>& z, const Eigen::VectorXd& v) {
      bool nonzero = false;
      for (long long c : z) nonzero = nonzero || c != 0;
      if (nonzero) best = std::min(best, v.squaredNorm());
    });
    CHECK(std::abs(sv.dist2 - best) <= 1e-9 * best);
  }
}

TEST_CASE("ball enumeration counts match exhaustive counts") {
  std::mt19937_64 g(4);
  for (int r = 2; r <= 5; ++r) {
    const RMatrix B = random_basis(g, r, r);
    const Enumerator E(B);
    for (int t = 0; t < 10; ++t) {
      const RVector c = random_target(g, r, 2.0);
      const double radius2 = 2.0 + t;
      std::size_t n = 0;
      E.for_each_in_ball(c, radius2, [&](const IntVector& z, double d2) {
        ++n;
        CHECK(std::abs((B * z.cast<double>() - c).squaredNorm() - d2) < 1e-9 * (1 + d2));
        CHECK(d2 <= radius2 + 1e-9);
      });
      CHECK(n == brute::count_ball(B, c, radius2));
    }
  }
}

TEST_CASE("node budget") {
  std::mt19937_64 g(5);
  const RMatrix B = random_basis(g, 12, 12);
  const Enumerator tiny(B, 3);
  const RVector t = random_target(g, 12, 5.0);
  const ClosestPoint cp = tiny.closest(t);
  CHECK_FALSE(cp.exact);
  // The fallback is no worse than Babai.
  CHECK(cp.dist2 <= tiny.babai(t).dist2 + 1e-12);
  CHECK_THROWS_AS(tiny.shortest(), BudgetExceeded);
  CHECK_THROWS_AS(tiny.for_each_in_ball(t, 100.0, [](const IntVector&, double) {}), BudgetExceeded);
}

TEST_CASE("solve recovers coordinates") {
  std::mt19937_64 g(6);
  const RMatrix B = random_basis(g, 7, 4);
  const Enumerator E(B);
  const RVector x = random_target(g, 4, 3.0);
  CHECK((E.solve(B * x) - x).norm() < 1e-9);
}
