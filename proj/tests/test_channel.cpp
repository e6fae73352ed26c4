#include "mbl/channel.hpp"
#include "mbl/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace mbl;

TEST_CASE("model names") {
  for (FadingKind k : {FadingKind::constant, FadingKind::iid_rayleigh, FadingKind::gauss_markov}) {
    CHECK(parse_fading_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_fading_kind("rician"), ParseError);
}

TEST_CASE("model validation") {
  FadingModel m;
  m.kind = FadingKind::constant;
  CHECK_THROWS_AS(m.validate(), DomainError);
  m.fixed_h = CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(m.validate(), ShapeMismatch);
  m.n = m.nr = 2;
  CHECK_NOTHROW(m.validate());
  FadingModel gm;
  gm.kind = FadingKind::gauss_markov;
  gm.rho = 1.0;
  CHECK_THROWS_AS(gm.validate(), DomainError);
  gm.rho = -0.1;
  CHECK_THROWS_AS(gm.validate(), DomainError);
}

TEST_CASE("constant model repeats the fixed matrix") {
  FadingModel m;
  m.kind = FadingKind::constant;
  m.n = 1;
  m.nr = 2;
  CMatrix H(2, 1);
  H << Complex(1, 2), Complex(0, -1);
  m.fixed_h = H;
  const auto r = sample(m, 4, 9);
  REQUIRE(r.blocks.size() == 4);
  for (const auto& b : r.blocks) CHECK(b == H);
}

TEST_CASE("Gauss-Markov with rho = 0 is bit-identical to i.i.d. Rayleigh") {
  FadingModel iid;
  iid.n = 2;
  iid.nr = 3;
  FadingModel gm = iid;
  gm.kind = FadingKind::gauss_markov;
  gm.rho = 0.0;
  const auto a = sample(iid, 5, 77, 4);
  const auto b = sample(gm, 5, 77, 4);
  for (int i = 0; i < 5; ++i) CHECK(a.blocks[i] == b.blocks[i]);
}

TEST_CASE("Rayleigh entry statistics and Gauss-Markov correlation") {
  FadingModel m;
  m.kind = FadingKind::gauss_markov;
  m.rho = 0.8;
  const int k = 100000;
  const auto r = sample(m, k, 5);
  double p = 0, re2 = 0, reim = 0, lag = 0;
  for (int i = 0; i < k; ++i) {
    const Complex h = r.blocks[i](0, 0);
    p += std::norm(h);
    re2 += h.real() * h.real();
    reim += h.real() * h.imag();
    if (i) lag += (h * std::conj(r.blocks[i - 1](0, 0))).real();
  }
  // Loose bounds: successive samples are correlated.
  CHECK(std::abs(p / k - 1) < 0.05);
  CHECK(std::abs(re2 / k - 0.5) < 0.03);
  CHECK(std::abs(reim / k) < 0.03);
  CHECK(std::abs(lag / (k - 1) - 0.8) < 0.05);

  FadingModel iid;
  const auto s = sample(iid, k, 6);
  double q = 0, q2 = 0;
  for (const auto& b : s.blocks) {
    q += std::norm(b(0, 0));
    q2 += std::norm(b(0, 0)) * std::norm(b(0, 0));
  }
  // |h|^2 ~ Exp(1): mean 1, second moment 2.
  CHECK(std::abs(q / k - 1) < 5 / std::sqrt(double(k)));
  CHECK(std::abs(q2 / k - 2) < 5 * std::sqrt(20.0 / k));
}

TEST_CASE("transmission") {
  FadingModel m;
  m.n = 2;
  m.nr = 2;
  const auto h = sample(m, 3, 1);
  CMatrix X = CMatrix::Random(2, 6);
  const CMatrix Y0 = transmit(X, h.blocks, nullptr, true);
  for (int i = 0; i < 3; ++i) CHECK((Y0.middleCols(2 * i, 2) - h.blocks[i] * X.middleCols(2 * i, 2)).norm() < 1e-14);
  CHECK_THROWS_AS(transmit(X, h.blocks, nullptr, false), DomainError);
  CHECK_THROWS_AS(transmit(CMatrix::Zero(2, 4), h.blocks, nullptr, true), ShapeMismatch);
  Rng noise(3, 0);
  double var = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) var += (transmit(X, h.blocks, &noise) - Y0).squaredNorm();
  CHECK(std::abs(var / (trials * 12) - 1) < 0.03);
}

TEST_CASE("log-determinant statistic") {
  std::vector<CMatrix> H = {CMatrix::Identity(2, 2) * 2.0, CMatrix::Identity(2, 2)};
  // (log2 16 + log2 1) / 2
  CHECK(logdet_statistic(H) == doctest::Approx(2.0).epsilon(1e-14));
  CMatrix wide(1, 2);
  wide << 1, 1;
  CHECK(logdet_statistic({wide}) == doctest::Approx(1.0).epsilon(1e-14));
  bool singular = false;
  CHECK(std::isinf(logdet_statistic({CMatrix::Zero(2, 2)}, &singular)));
  CHECK(singular);
}
