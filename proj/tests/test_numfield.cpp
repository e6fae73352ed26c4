#include "mbl/errors.hpp"
#include "mbl/numfield.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mbl;

namespace {

FieldRecord record(const std::string& name, std::vector<long> poly) {
  FieldRecord r;
  r.name = name;
  r.degree = static_cast<int>(poly.size()) - 1;
  for (long c : poly) r.min_poly.emplace_back(c);
  for (int i = 0; i < r.degree; ++i) {
    RationalVector w(i + 1, Rational(0));
    w[i] = 1;
    r.basis.push_back(w);
  }
  return r;
}

// Discriminant of a monic integer polynomial: det of the Hankel matrix of
// root power sums, with the sums from Newton's identities.
Integer poly_discriminant(const std::vector<Integer>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  std::vector<Integer> p(2 * d - 1);
  p[0] = d;
  // e_j = (-1)^j a_{d-j}
  for (int m = 1; m < 2 * d - 1; ++m) {
    Integer s = 0;
    for (int j = 1; j <= std::min(m - 1, d); ++j) {
      const Integer e = (j % 2 ? -1 : 1) * a[d - j];
      s += (j % 2 ? 1 : -1) * e * p[m - j];
    }
    if (m <= d) {
      const Integer e = (m % 2 ? -1 : 1) * a[d - m];
      s += (m % 2 ? 1 : -1) * Integer(m) * e;
    }
    p[m] = s;
  }
  RationalMatrix h(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) h(i, j) = Rational(p[i + j]);
  }
  return determinant(h).get_num();
}

}  // namespace

TEST_CASE("catalog discriminants against independent values") {
  const Catalog& cat = test_catalog();
  CHECK(cat.field("q_i")->discriminant() == -4);
  CHECK(cat.field("q_omega")->discriminant() == -3);
  // Cyclotomic: (-1)^{phi/2} m^phi / prod p^{phi/(p-1)}.
  CHECK(cat.field("cyclo5")->discriminant() == 125);
  Integer d60 = 1;
  for (int i = 0; i < 16; ++i) d60 *= 2;
  for (int i = 0; i < 8; ++i) d60 *= 3;
  for (int i = 0; i < 12; ++i) d60 *= 5;
  CHECK(cat.field("cyclo60")->discriminant() == d60);
  // Power bases: polynomial discriminant.
  for (const char* name : {"q_omega", "cyclo5", "q117", "sextic", "cyclo60"}) {
    const auto K = cat.field(name);
    CHECK(K->discriminant() == poly_discriminant(K->min_poly()));
  }
  // The octic basis has index 2^16 in Z[theta].
  const auto oct = cat.field("octic");
  const Integer index = Integer(1) << 16;
  CHECK(poly_discriminant(oct->min_poly()) == oct->discriminant() * index * index);
}

TEST_CASE("numeric trace-form discriminant agrees with the exact one") {
  const Catalog& cat = test_catalog();
  for (const auto& name : cat.field_names()) {
    const auto K = cat.field(name);
    CHECK(K->discriminant_numeric() == K->discriminant());
    CHECK(K->root_residual() < 1e-12);
  }
}

TEST_CASE("roots come in conjugate pairs") {
  const auto K = test_catalog().field("sextic");
  const int k = K->half_degree();
  for (int i = 0; i < k; ++i) {
    CHECK(K->roots()[i].imag() > 0);
    CHECK(std::abs(K->roots()[i + k] - std::conj(K->roots()[i])) < 1e-12);
  }
}

TEST_CASE("element arithmetic in Q(i)") {
  const auto K = test_catalog().field("q_i");
  const FieldElement one = K->one();
  const FieldElement i = K->generator();
  CHECK((i * i) == (one * Rational(-1)));
  const FieldElement a = one + i;
  const FieldElement b = one - i;
  CHECK((a * b) == (one * Rational(2)));
  CHECK(a.norm() == 2);
  CHECK(i.trace() == 0);
  CHECK(one.trace() == 2);
  CHECK(a.is_integral());
  CHECK_FALSE((a * Rational(1, 2)).is_integral());
  const CVector e = K->canonical_embed(i);
  CHECK(e.size() == 1);
  CHECK(std::abs(std::abs(e(0)) - 1.0) < 1e-15);
}

TEST_CASE("norm of 1 - zeta in the 5th cyclotomic field is 5") {
  const auto K = test_catalog().field("cyclo5");
  const FieldElement x = K->one() - K->generator();
  CHECK(x.norm() == 5);
  CHECK(x.trace() == 5);  // 4 - (sum of primitive roots) = 4 + 1
}

TEST_CASE("embeddings are ring homomorphisms and norms match products") {
  const Catalog& cat = test_catalog();
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const char* name : {"q117", "sextic", "octic"}) {
    const auto K = cat.field(name);
    const int d = K->degree();
    for (int t = 0; t < 20; ++t) {
      RationalVector x(d), y(d);
      for (int j = 0; j < d; ++j) {
        x[j] = coef(gen);
        y[j] = coef(gen);
      }
      const RationalVector xy = K->multiply(x, y);
      std::complex<double> prod = 1.0;
      for (int r = 0; r < d; ++r) {
        const Complex ex = K->embed(x, r), ey = K->embed(y, r), exy = K->embed(xy, r);
        CHECK(std::abs(exy - ex * ey) < 1e-9 * (1 + std::abs(ex * ey)));
        prod *= ex;
      }
      const double nrm = K->norm(x).get_d();
      CHECK(std::abs(prod.real() - nrm) < 1e-7 * (1 + std::abs(nrm)));
      CHECK(std::abs(prod.imag()) < 1e-7 * (1 + std::abs(nrm)));
      double tr = 0.0;
      for (int r = 0; r < d; ++r) tr += K->embed(x, r).real();
      CHECK(std::abs(tr - K->trace(x).get_d()) < 1e-9);
    }
  }
}

TEST_CASE("power sums and reduction") {
  const std::vector<Integer> x2p1 = {1, 0, 1};
  const auto p = power_sums(x2p1, 5);
  CHECK(p == std::vector<Integer>{2, 0, -2, 0, 2});
  // theta^3 = -theta modulo theta^2 + 1
  const RationalVector r = reduce_mod(RationalVector{0, 0, 0, 1}, x2p1);
  CHECK(r.size() == 2);
  CHECK(r[0] == 0);
  CHECK(r[1] == -1);
}

TEST_CASE("invalid field records are rejected") {
  CHECK_THROWS_AS(NumberField::create(record("real", {-2, 0, 1})), NotTotallyComplex);
  CHECK_THROWS_AS(NumberField::create(record("cubic", {1, 0, 0, 1})), CatalogInconsistent);
  CHECK_THROWS_AS(NumberField::create(record("reducible", {2, 0, 3, 0, 1})), CatalogInconsistent);
  FieldRecord nonmonic = record("nonmonic", {1, 0, 2});
  CHECK_THROWS_AS(NumberField::create(nonmonic), CatalogInconsistent);
  FieldRecord wrong = record("wrong_disc", {1, 0, 1});
  wrong.disc_expected = Integer(-3);
  CHECK_THROWS_AS(NumberField::create(wrong), CatalogInconsistent);
  FieldRecord half = record("half", {1, 0, 1});
  half.basis[1] = RationalVector{0, Rational(1, 2)};
  CHECK_THROWS_AS(NumberField::create(half), CatalogInconsistent);
  FieldRecord ok = record("gaussian", {1, 0, 1});
  ok.disc_expected = Integer(-4);
  CHECK(NumberField::create(ok)->discriminant() == -4);
}
