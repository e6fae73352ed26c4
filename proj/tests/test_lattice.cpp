#include "mbl/cyclic_algebra.hpp"
#include "mbl/errors.hpp"
#include "mbl/lattice.hpp"
#include "mbl/lattice_io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace mbl;

namespace {

// Lattice in the 1 x (dim/2) complex matrix space from real basis rows.
MatrixLattice from_real_rows(const RMatrix& rows) {
  const int dim = static_cast<int>(rows.cols());
  BlockShape s{1, 1, dim / 2};
  std::vector<CMatrix> basis;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) basis.push_back(complexify(rows.row(i).transpose(), 1, dim / 2));
  return MatrixLattice(s, basis);
}

RMatrix e8_rows() {
  RMatrix B = RMatrix::Zero(8, 8);
  B(0, 0) = 2;
  for (int i = 1; i < 7; ++i) {
    B(i, i - 1) = -1;
    B(i, i) = 1;
  }
  B.row(7).setConstant(0.5);
  return B;
}

CMatrix random_cmatrix(std::mt19937_64& g, int r, int c) {
  std::normal_distribution<double> N(0, 1);
  CMatrix M(r, c);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) M(i, j) = Complex(N(g), N(g));
  }
  return M;
}

}  // namespace

TEST_CASE("realify index convention and round trip") {
  CMatrix X(2, 3);
  X << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8), Complex(9, 10), Complex(11, 12);
  const RVector v = realify(X);
  REQUIRE(v.size() == 12);
  // column 1, row 0 -> 2 * (1 * 2 + 0)
  CHECK(v(4) == 3);
  CHECK(v(5) == 4);
  CHECK(v(2) == 7);
  CHECK(complexify(v, 2, 3) == X);
  CHECK(std::abs(v.squaredNorm() - X.squaredNorm()) < 1e-12);
  CHECK_THROWS_AS(complexify(v, 3, 3), ShapeMismatch);
}

TEST_CASE("inner product is Re Tr(X Y^dagger)") {
  std::mt19937_64 g(3);
  const CMatrix X = random_cmatrix(g, 2, 4), Y = random_cmatrix(g, 2, 4);
  CHECK(std::abs(realify(X).dot(realify(Y)) - (X * Y.adjoint()).trace().real()) < 1e-12);
}

TEST_CASE("Hermite invariants of classical lattices") {
  const MatrixLattice e8 = from_real_rows(e8_rows());
  CHECK(std::abs(e8.volume() - 1.0) < 1e-12);
  CHECK(std::abs(hermite_invariant(e8).hermite - 2.0) < 1e-9);

  RMatrix d4(4, 4);
  d4 << 1, 1, 0, 0, -1, 1, 0, 0, 0, -1, 1, 0, 0, 0, -1, 1;
  const MatrixLattice D4 = from_real_rows(d4);
  CHECK(std::abs(D4.volume() - 2.0) < 1e-12);
  CHECK(std::abs(hermite_invariant(D4).hermite - std::sqrt(2.0)) < 1e-9);

  RMatrix hex(2, 2);
  hex << 1, 0, 0.5, std::sqrt(3.0) / 2;
  CHECK(std::abs(hermite_invariant(from_real_rows(hex)).hermite - 2 / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("degenerate and mis-shaped bases") {
  RMatrix dep(2, 2);
  dep << 1, 2, 2, 4;
  CHECK_THROWS_AS(from_real_rows(dep), DegenerateLattice);
  BlockShape s{2, 2, 1};
  CHECK_THROWS_AS(MatrixLattice(s, {CMatrix::Identity(2, 3)}), ShapeMismatch);
}

TEST_CASE("fade scales the volume by prod |det H_i|^{2n}") {
  const auto A = test_catalog().algebra("golden");
  const MatrixLattice L = A->order_lattice();
  std::mt19937_64 g(5);
  const std::vector<CMatrix> H = {random_cmatrix(g, 2, 2)};
  const MatrixLattice HL = fade(L, H);
  const double ratio = std::pow(std::abs(H[0].determinant()), 4);
  CHECK(std::abs(HL.volume() / L.volume() - ratio) < 1e-9 * ratio);
  CHECK_THROWS_AS(fade(L, {CMatrix::Zero(2, 2)}), SingularChannel);
}

TEST_CASE("Hadamard inequality on random multiblock matrices") {
  std::mt19937_64 g(9);
  BlockShape s{3, 3, 2};
  for (int t = 0; t < 50; ++t) {
    const CMatrix X = random_cmatrix(g, 3, 6);
    const HadamardSides h = hadamard_check(X, s);
    CHECK(h.abs_pdet <= h.bound * (1 + 1e-12));
    CHECK(std::abs(h.abs_pdet - std::abs(pdet(X, s))) < 1e-12 * (1 + h.abs_pdet));
  }
  // Equality for a multiple of the identity in every block.
  CMatrix I(3, 6);
  I << CMatrix::Identity(3, 3), CMatrix::Identity(3, 3);
  const HadamardSides h = hadamard_check(2.0 * I, s);
  CHECK(std::abs(h.abs_pdet - h.bound) < 1e-9 * h.bound);
}

TEST_CASE("form homogeneity degrees") {
  std::mt19937_64 g(13);
  BlockShape siso{1, 1, 3};
  BlockShape mimo{2, 2, 2};
  const CMatrix x = random_cmatrix(g, 1, 3);
  const CMatrix X = random_cmatrix(g, 2, 4);
  const double a = 1.7;
  CHECK(form_degree(Form::f1, siso) == 2);
  CHECK(form_degree(Form::f2, siso) == 3);
  CHECK(form_degree(Form::f3, mimo) == 4);
  for (Form f : {Form::f1, Form::f2, Form::f3}) {
    const double v = form_eval(f, x, siso), va = form_eval(f, a * x, siso);
    CHECK(std::abs(va - std::pow(a, form_degree(f, siso)) * v) < 1e-9 * va);
  }
  const double v = form_eval(Form::f3, X, mimo);
  CHECK(std::abs(form_eval(Form::f3, a * X, mimo) - std::pow(a, 4) * v) < 1e-9 * std::pow(a, 4) * v);
  CHECK(std::abs(form_eval(Form::f2, x, siso) - std::abs(x(0)) * std::abs(x(1)) * std::abs(x(2))) < 1e-12);
  CHECK_THROWS_AS(form_eval(Form::f2, X, mimo), ShapeMismatch);
}

TEST_CASE("adversarial fade equalizes a point") {
  std::mt19937_64 g(17);
  BlockShape s{2, 2, 3};
  const CMatrix X = random_cmatrix(g, 2, 6);
  const auto H = adversarial_fade(X, s);
  CMatrix Hcat(2, 6);
  for (int i = 0; i < 3; ++i) Hcat.middleCols(2 * i, 2) = H[i];
  CHECK(std::abs(std::abs(pdet(Hcat, s)) - 1.0) < 1e-10);
  const CMatrix HX = apply_blocks(H, X, s);
  const double c = std::pow(std::abs(pdet(X, s)), 1.0 / 6);
  for (int i = 0; i < 3; ++i) CHECK((block(HX, s, i) - c * CMatrix::Identity(2, 2)).norm() < 1e-10);
}

TEST_CASE("invariants of the golden lattice") {
  const auto A = test_catalog().algebra("golden");
  const MatrixLattice L = A->order_lattice();
  const InvariantReport r = compute_invariants(L, 2.0 * (1 + 1e-9), 1.0);
  CHECK(r.certificate == DetMinCertificate::algebraic);
  CHECK(std::abs(r.volume - 25.0) < 1e-9);
  CHECK(std::abs(r.delta - 1 / std::sqrt(5.0)) < 1e-12);
  CHECK(std::abs(r.rh_lower - 2 * r.delta) < 1e-12);
  CHECK(r.hermite >= r.rh_lower - 1e-9);
  // A certificate above the true minimum is caught by the ball search.
  CHECK_THROWS_AS(compute_invariants(L, 2.0 * (1 + 1e-9), 2.0), CatalogInconsistent);
  const MinPdetResult m = min_pdet(L, 2.0 * (1 + 1e-9));
  CHECK(std::abs(m.value - 1.0) < 1e-9);
  CHECK_THROWS_AS(min_pdet(L, 0.5), EmptyBall);
}

TEST_CASE("scaling a lattice") {
  const MatrixLattice L = from_real_rows(e8_rows());
  const MatrixLattice S = L.scaled(3.0);
  CHECK(std::abs(S.log_volume() - (L.log_volume() + 8 * std::log(3.0))) < 1e-10);
  CHECK(std::abs(hermite_invariant(S).hermite - 2.0) < 1e-9);
}

TEST_CASE("matrix file round trip") {
  CHECK(parse_complex("1.5-2e-3j") == Complex(1.5, -2e-3));
  CHECK(parse_complex("-1e+2+3j") == Complex(-100, 3));
  CHECK(parse_complex(format_complex(Complex(0.1, -1.0 / 3))) == Complex(0.1, -1.0 / 3));
  CHECK_THROWS_AS(parse_complex("1+2"), ParseError);

  const MatrixLattice L = test_catalog().algebra("golden")->order_lattice();
  const auto path = std::filesystem::temp_directory_path() / "mbl_golden.lat";
  save_lattice(L, path.string());
  const MatrixLattice R = load_lattice(path.string());
  CHECK(R.rank() == L.rank());
  CHECK(R.shape().k == 1);
  for (int j = 0; j < L.rank(); ++j) CHECK(R.basis()[j] == L.basis()[j]);
  std::filesystem::remove(path);
}
