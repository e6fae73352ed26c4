#include "brute_force.hpp"
#include "mbl/codebook.hpp"
#include "mbl/cyclic_algebra.hpp"
#include "mbl/errors.hpp"
#include "mbl/lattice_io.hpp"
#include "mbl/special.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace mbl;

namespace {

std::shared_ptr<const MatrixLattice> field_lattice(const char* name) {
  return std::make_shared<MatrixLattice>(CyclicAlgebra::trivial(test_catalog().field(name))->order_lattice());
}

}  // namespace

TEST_CASE("C_{n,k} against a direct product") {
  for (auto [n, k] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}}) {
    const int m = n * n * k;
    double c = 1.0;
    for (int i = 1; i <= m; ++i) c *= kPi * n * k / i;
    CHECK(std::abs(log_c_nk(n, k) - std::log(c)) < 1e-12 * (1 + std::abs(std::log(c))));
  }
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(2, 1.0) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(4.0 / 3 * kPi * 8).epsilon(1e-14));
  CHECK(ball_volume(8, 1.0) == doctest::Approx(std::pow(kPi, 4) / 24).epsilon(1e-14));
}

TEST_CASE("scaling puts 2^{R n k} cells in the power ball") {
  for (auto [n, k] : {std::pair{1, 1}, {1, 4}, {2, 1}, {2, 2}}) {
    const double P = 37.0, R = 2.3, vol = 5.5;
    const int d = 2 * n * n * k;
    const double a = scaling_alpha(P, R, n, k, vol);
    // log of ball volume over cell volume alpha^d vol
    const double log_ball = 0.5 * d * std::log(kPi * P * n * k) - std::lgamma(0.5 * d + 1);
    const double log_cell = d * std::log(a) + std::log(vol);
    CHECK(std::abs((log_ball - log_cell) / std::log(2.0) - R * n * k) < 1e-9);
  }
  CHECK_THROWS_AS(scaling_alpha(0.0, 1.0, 1, 1, 1.0), DomainError);
  CHECK_THROWS_AS(scaling_alpha(1.0, 1.0, 1, 1, -1.0), DomainError);
}

TEST_CASE("carved codebooks hold exactly the shifted points in the ball") {
  for (const char* name : {"q_omega", "q117", "sextic"}) {
    const auto L = field_lattice(name);
    CarveOptions opt;
    opt.truncate = false;
    const double P = 10.0, R = 2.0;
    const Codebook C = carve(L, P, R, 4, 123, opt);
    const BlockShape& s = L->shape();
    const double radius2 = P * s.n * s.k;
    CHECK(C.size() >= std::exp2(std::floor(R * s.n * s.k)));
    CHECK(C.size() == C.points_in_ball);
    const RMatrix B = C.alpha * L->real_basis();
    const std::size_t n = brute::count_ball(B, -realify(C.shift), radius2);
    CHECK(C.size() == n);
    for (std::size_t j = 0; j < C.size(); ++j) {
      CHECK(C.codewords[j].squaredNorm() <= radius2 + 1e-12);
      CHECK((C.codewords[j] - (C.shift + C.alpha * L->point(C.coords[j]))).norm() < 1e-12);
      if (j) CHECK(C.codewords[j - 1].squaredNorm() <= C.codewords[j].squaredNorm());
    }
    CHECK(std::abs(C.realized_rate() - std::log2(double(C.size())) / (s.n * s.k)) < 1e-15);
    // Same seed, same codebook.
    const Codebook D = carve(L, P, R, 4, 123, opt);
    CHECK(D.shift == C.shift);
    CHECK(D.size() == C.size());
  }
}

TEST_CASE("codebook file") {
  const auto L = field_lattice("q_omega");
  const Codebook C = carve(L, 100.0, 3.0, 2, 1);
  std::stringstream ss;
  write_codebook(ss, C);
  const MatrixFile f = read_matrix_file(ss);
  CHECK(f.matrices.size() == C.size());
  CHECK(f.get("truncated") == (C.truncated ? "true" : "false"));
  CHECK(std::stod(f.get("alpha")) == C.alpha);
}

TEST_CASE("implicit codebook draws shifted lattice points inside the ball") {
  const auto L = field_lattice("octic");
  const ImplicitCodebook book(L, 100.0, 4.0, 7);
  Rng rng(1, 0);
  double mean_energy = 0;
  for (int t = 0; t < 500; ++t) {
    const IntVector z = book.sample(rng);
    const double e = book.code_lattice().point(z).squaredNorm();
    CHECK(e <= book.radius2());
    mean_energy += e / 500;
  }
  // Uniform in an 8-ball: E||X||^2 = r^2 * 8 / 10.
  CHECK(std::abs(mean_energy / (book.radius2() * 8.0 / 10.0) - 1) < 0.05);
}
