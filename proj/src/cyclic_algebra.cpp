#include "mbl/cyclic_algebra.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace mbl {

namespace {

RationalVector add(const RationalVector& a, const RationalVector& b) {
  RationalVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  RationalVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

bool all_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

RationalVector slice(const RationalVector& v, std::size_t from, std::size_t len) {
  return RationalVector(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + len));
}

void put(RationalVector& v, std::size_t at, const RationalVector& part) {
  std::copy(part.begin(), part.end(), v.begin() + static_cast<long>(at));
}

Integer round_long_double(long double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.0Lf", std::round(x));
  Integer out;
  out.set_str(buf, 10);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(const CyclicAlgebra& owner, RationalVector coords)
    : owner_(&owner), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != owner.dimension()) throw ShapeMismatch("algebra element has wrong length");
}

bool AlgebraElement::is_zero() const { return all_zero(coords_); }

bool AlgebraElement::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return is_integer(q); });
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  if (owner_ != o.owner_) throw ShapeMismatch("elements of different algebras");
  return AlgebraElement(*owner_, add(coords_, o.coords_));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  if (owner_ != o.owner_) throw ShapeMismatch("elements of different algebras");
  return AlgebraElement(*owner_, sub(coords_, o.coords_));
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const { return owner_->multiply(*this, o); }

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  return owner_ == o.owner_ && coords_ == o.coords_;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const CyclicAlgebra> CyclicAlgebra::create(const AlgebraRecord& rec,
                                                           std::shared_ptr<const NumberField> center) {
  std::shared_ptr<CyclicAlgebra> A(new CyclicAlgebra());
  A->name_ = rec.name;
  A->center_ = std::move(center);
  A->n_ = rec.n;
  A->division_ = rec.division;
  const NumberField& K = *A->center_;
  const std::size_t d = K.degree();
  if (rec.n < 1) throw CatalogInconsistent(rec.name + ": n must be >= 1");
  if (static_cast<int>(rec.rel_poly.size()) != rec.n + 1) {
    throw CatalogInconsistent(rec.name + ": rel_poly needs n+1 coefficients");
  }
  if (static_cast<int>(rec.sigma_eta.size()) != rec.n) throw CatalogInconsistent(rec.name + ": sigma_eta needs n entries");
  auto check_k = [&](const RationalVector& v, const char* what) {
    if (v.size() != d) throw CatalogInconsistent(rec.name + ": " + what + " needs " + std::to_string(d) + " coordinates");
  };
  for (const auto& c : rec.rel_poly) check_k(c, "rel_poly coefficient");
  for (const auto& c : rec.sigma_eta) check_k(c, "sigma_eta entry");
  check_k(rec.gamma, "gamma");
  A->rel_poly_ = rec.rel_poly;
  A->sigma_eta_.clear();
  for (const auto& c : rec.sigma_eta) A->sigma_eta_.insert(A->sigma_eta_.end(), c.begin(), c.end());
  A->gamma_ = rec.gamma;
  A->build();
  return A;
}

std::shared_ptr<const CyclicAlgebra> CyclicAlgebra::trivial(std::shared_ptr<const NumberField> center) {
  const std::size_t d = center->degree();
  AlgebraRecord rec;
  rec.name = center->name() + "_trivial";
  rec.center = center->name();
  rec.n = 1;
  rec.rel_poly = {RationalVector(d, Rational(0)), center->one().coords()};
  rec.sigma_eta = {RationalVector(d, Rational(0))};
  rec.gamma = center->one().coords();
  rec.division = true;
  return create(rec, std::move(center));
}

void CyclicAlgebra::build() {
  const NumberField& K = *center_;
  const int d = K.degree();
  const int k = K.half_degree();

  if (rel_poly_.back() != K.one().coords()) throw CatalogInconsistent(name_ + ": rel_poly must be monic");
  for (const auto& c : rel_poly_) {
    if (!K.element(c).is_integral()) throw CatalogInconsistent(name_ + ": rel_poly coefficients must lie in O_K");
  }
  if (all_zero(gamma_)) throw CatalogInconsistent(name_ + ": gamma must be nonzero");
  if (!K.element(gamma_).is_integral()) throw CatalogInconsistent(name_ + ": gamma must lie in O_K");

  // sigma(eta) must be a root of rel_poly: evaluate by Horner in E.
  {
    RationalVector acc = e_from_k(rel_poly_[n_]);
    for (int b = n_ - 1; b >= 0; --b) acc = add(e_multiply(acc, sigma_eta_), e_from_k(rel_poly_[b]));
    if (!all_zero(acc)) throw CatalogInconsistent(name_ + ": sigma(eta) is not a root of rel_poly");
  }

  // sigma on the eta-power basis, then its powers.
  std::vector<RationalVector> s1(n_);
  RationalVector p = e_from_k(K.one().coords());
  for (int b = 0; b < n_; ++b) {
    s1[b] = p;
    p = e_multiply(p, sigma_eta_);
  }
  auto apply = [&](const std::vector<RationalVector>& m, const RationalVector& x) {
    RationalVector out(n_ * d, Rational(0));
    for (int b = 0; b < n_; ++b) {
      const RationalVector xb = slice(x, b * d, d);
      if (all_zero(xb)) continue;
      out = add(out, e_multiply(e_from_k(xb), m[b]));
    }
    return out;
  };
  sigma_pow_.clear();
  std::vector<RationalVector> ident(n_);
  for (int b = 0; b < n_; ++b) {
    ident[b] = RationalVector(n_ * d, Rational(0));
    put(ident[b], b * d, K.one().coords());
  }
  sigma_pow_.push_back(ident);
  for (int j = 1; j <= n_; ++j) {
    std::vector<RationalVector> next(n_);
    for (int b = 0; b < n_; ++b) next[b] = apply(s1, sigma_pow_.back()[b]);
    sigma_pow_.push_back(next);
  }
  RationalVector eta(n_ * d, Rational(0));
  if (n_ > 1) put(eta, d, K.one().coords());
  for (int j = 1; j < n_; ++j) {
    if (sigma_pow_[j][1] == eta) throw CatalogInconsistent(name_ + ": sigma has order smaller than n");
  }
  if (n_ > 1 && sigma_pow_[n_][1] != eta) throw CatalogInconsistent(name_ + ": sigma^n does not fix eta");
  sigma_pow_.pop_back();

  // Roots of the embedded relative polynomial; choose rho_i.
  eta_roots_.clear();
  for (int i = 0; i < k; ++i) {
    std::vector<Complex> f(n_ + 1);
    for (int b = 0; b <= n_; ++b) f[b] = K.embed(rel_poly_[b], i);
    std::vector<Complex> roots;
    if (n_ == 1) {
      roots.push_back(-f[0]);
    } else {
      CMatrix comp = CMatrix::Zero(n_, n_);
      for (int r = 1; r < n_; ++r) comp(r, r - 1) = 1.0;
      for (int r = 0; r < n_; ++r) comp(r, n_ - 1) = -f[r];
      Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
      for (int r = 0; r < n_; ++r) {
        Complex z = es.eigenvalues()[r];
        for (int it = 0; it < 50; ++it) {
          Complex fz = 0, dz = 0;
          for (int b = n_; b >= 0; --b) {
            dz = dz * z + fz;
            fz = fz * z + f[b];
          }
          if (std::abs(dz) == 0.0) break;
          const Complex step = fz / dz;
          z -= step;
          if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        roots.push_back(z);
      }
    }
    for (std::size_t a = 0; a < roots.size(); ++a) {
      for (std::size_t b = a + 1; b < roots.size(); ++b) {
        if (std::abs(roots[a] - roots[b]) < 1e-8) throw CatalogInconsistent(name_ + ": rel_poly has a repeated root");
      }
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
      if (std::abs(a.real() - b.real()) > 1e-9) return a.real() > b.real();
      return a.imag() > b.imag();
    });
    eta_roots_.push_back(roots.front());
  }

  // sigma^n(eta) = eta already holds exactly; cross-check the numeric images.
  for (int i = 0; i < k; ++i) {
    if (n_ > 1) {
      const Complex s = e_embed(sigma_eta_, i);
      Complex fs = 0;
      for (int b = n_; b >= 0; --b) fs = fs * s + K.embed(rel_poly_[b], i);
      if (std::abs(fs) > 1e-8 * std::max(1.0, std::abs(s))) {
        throw PrecisionFailure(name_ + ": embedded sigma(eta) is not a root");
      }
    }
  }

  order_matrices_.clear();
  for (int j = 0; j < dimension(); ++j) order_matrices_.push_back(multiblock_embed(order_basis(j)));
}

RationalVector CyclicAlgebra::e_from_k(const RationalVector& kc) const {
  const int d = center_->degree();
  RationalVector out(n_ * d, Rational(0));
  put(out, 0, kc);
  return out;
}

RationalVector CyclicAlgebra::e_multiply(const RationalVector& x, const RationalVector& y) const {
  const NumberField& K = *center_;
  const int d = K.degree();
  std::vector<RationalVector> prod(2 * n_ - 1, RationalVector(d, Rational(0)));
  for (int i = 0; i < n_; ++i) {
    const RationalVector xi = slice(x, i * d, d);
    if (all_zero(xi)) continue;
    for (int j = 0; j < n_; ++j) {
      const RationalVector yj = slice(y, j * d, d);
      if (all_zero(yj)) continue;
      prod[i + j] = add(prod[i + j], K.multiply(xi, yj));
    }
  }
  for (int j = 2 * n_ - 2; j >= n_; --j) {
    if (all_zero(prod[j])) continue;
    const RationalVector c = prod[j];
    for (int i = 0; i < n_; ++i) prod[j - n_ + i] = sub(prod[j - n_ + i], K.multiply(c, rel_poly_[i]));
    prod[j] = RationalVector(d, Rational(0));
  }
  RationalVector out(n_ * d);
  for (int b = 0; b < n_; ++b) put(out, b * d, prod[b]);
  return out;
}

RationalVector CyclicAlgebra::e_sigma(const RationalVector& x, int power) const {
  const int d = center_->degree();
  power = ((power % n_) + n_) % n_;
  const auto& m = sigma_pow_[power];
  RationalVector out(n_ * d, Rational(0));
  for (int b = 0; b < n_; ++b) {
    const RationalVector xb = slice(x, b * d, d);
    if (all_zero(xb)) continue;
    out = add(out, e_multiply(e_from_k(xb), m[b]));
  }
  return out;
}

Complex CyclicAlgebra::e_embed(const RationalVector& x, int i) const {
  const int d = center_->degree();
  Complex acc = 0;
  for (int b = n_ - 1; b >= 0; --b) acc = acc * eta_roots_[i] + center_->embed(slice(x, b * d, d), i);
  return acc;
}

AlgebraElement CyclicAlgebra::zero() const { return AlgebraElement(*this, RationalVector(dimension(), Rational(0))); }

AlgebraElement CyclicAlgebra::one() const {
  RationalVector c(dimension(), Rational(0));
  put(c, 0, center_->one().coords());
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement CyclicAlgebra::u() const {
  if (n_ == 1) return AlgebraElement(*this, e_from_k(gamma_));
  RationalVector c(dimension(), Rational(0));
  put(c, static_cast<std::size_t>(flat(1, 0, 0)), center_->one().coords());
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement CyclicAlgebra::from_components(const std::vector<RationalVector>& x) const {
  if (static_cast<int>(x.size()) != n_) throw ShapeMismatch("need n components");
  RationalVector c(dimension());
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(x[i].size()) != e_dimension()) throw ShapeMismatch("component has wrong length");
    put(c, static_cast<std::size_t>(i) * e_dimension(), x[i]);
  }
  return AlgebraElement(*this, std::move(c));
}

AlgebraElement CyclicAlgebra::from_integers(const IntVector& coords) const {
  if (coords.size() != dimension()) throw ShapeMismatch("integer coordinate vector has wrong length");
  RationalVector c(dimension());
  for (int j = 0; j < dimension(); ++j) c[j] = Rational(static_cast<long>(coords(j)));
  return AlgebraElement(*this, std::move(c));
}

std::vector<RationalVector> CyclicAlgebra::components(const AlgebraElement& a) const {
  std::vector<RationalVector> x(n_);
  for (int i = 0; i < n_; ++i) x[i] = slice(a.coords(), static_cast<std::size_t>(i) * e_dimension(), e_dimension());
  return x;
}

AlgebraElement CyclicAlgebra::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  const auto x = components(a);
  const auto y = components(b);
  const RationalVector g = e_from_k(gamma_);
  std::vector<RationalVector> z(n_, RationalVector(e_dimension(), Rational(0)));
  for (int i = 0; i < n_; ++i) {
    if (all_zero(x[i])) continue;
    for (int j = 0; j < n_; ++j) {
      if (all_zero(y[j])) continue;
      RationalVector t = e_multiply(e_sigma(x[i], j), y[j]);
      int p = i + j;
      if (p >= n_) {
        t = e_multiply(g, t);
        p -= n_;
      }
      z[p] = add(z[p], t);
    }
  }
  return from_components(z);
}

CMatrix CyclicAlgebra::left_regular(const AlgebraElement& a, int i) const {
  if (i < 0 || i >= k()) throw ShapeMismatch("embedding index out of range");
  const auto x = components(a);
  const Complex g = center_->embed(gamma_, i);
  CMatrix M(n_, n_);
  for (int c = 0; c < n_; ++c) {
    for (int r = 0; r < n_; ++r) {
      if (r >= c) {
        M(r, c) = e_embed(e_sigma(x[r - c], c), i);
      } else {
        M(r, c) = g * e_embed(e_sigma(x[n_ + r - c], c), i);
      }
    }
  }
  return M;
}

CMatrix CyclicAlgebra::multiblock_embed(const AlgebraElement& a) const {
  CMatrix X(n_, n_ * k());
  for (int i = 0; i < k(); ++i) X.middleCols(static_cast<Eigen::Index>(i) * n_, n_) = left_regular(a, i);
  return X;
}

RationalVector CyclicAlgebra::reduced_norm(const AlgebraElement& a) const {
  const auto x = components(a);
  const RationalVector g = e_from_k(gamma_);
  // exact matrix over E
  std::vector<std::vector<RationalVector>> M(n_, std::vector<RationalVector>(n_));
  for (int c = 0; c < n_; ++c) {
    for (int r = 0; r < n_; ++r) {
      M[r][c] = (r >= c) ? e_sigma(x[r - c], c) : e_multiply(g, e_sigma(x[n_ + r - c], c));
    }
  }
  std::vector<int> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  RationalVector det(e_dimension(), Rational(0));
  do {
    int inversions = 0;
    for (int p = 0; p < n_; ++p) {
      for (int q = p + 1; q < n_; ++q) inversions += perm[p] > perm[q];
    }
    RationalVector term = e_from_k(center_->one().coords());
    for (int r = 0; r < n_ && !all_zero(term); ++r) term = e_multiply(term, M[r][perm[r]]);
    det = (inversions % 2 == 0) ? add(det, term) : sub(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const int d = center_->degree();
  for (int b = 1; b < n_; ++b) {
    if (!all_zero(slice(det, b * d, d))) throw CatalogInconsistent(name_ + ": reduced norm is not in the center");
  }
  return slice(det, 0, d);
}

Rational CyclicAlgebra::pdet_abs_squared(const AlgebraElement& a) const {
  return abs(center_->norm(reduced_norm(a)));
}

Rational CyclicAlgebra::full_trace(const AlgebraElement& a) const {
  const auto x = components(a);
  RationalVector s(e_dimension(), Rational(0));
  for (int c = 0; c < n_; ++c) s = add(s, e_sigma(x[0], c));
  return center_->trace(slice(s, 0, center_->degree()));
}

AlgebraElement CyclicAlgebra::order_basis(int index) const {
  if (index < 0 || index >= dimension()) throw ShapeMismatch("order basis index out of range");
  const int d = center_->degree();
  const int a = index % d;
  const int b = (index / d) % n_;
  const int c = index / (d * n_);
  // w_a eta^b as an E element, placed in component c
  RationalVector e(e_dimension(), Rational(0));
  RationalVector wa(d, Rational(0));
  wa[a] = 1;
  put(e, static_cast<std::size_t>(b) * d, wa);
  std::vector<RationalVector> comps(n_, RationalVector(e_dimension(), Rational(0)));
  comps[c] = e;
  return from_components(comps);
}

MatrixLattice CyclicAlgebra::order_lattice() const { return MatrixLattice(shape(), order_matrices_); }

Integer CyclicAlgebra::z_discriminant() const {
  const int r = dimension();
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> T(r, r);
  for (int p = 0; p < r; ++p) {
    for (int q = p; q < r; ++q) {
      long double s = 0;
      for (int i = 0; i < k(); ++i) {
        const auto Bp = order_matrices_[p].middleCols(static_cast<Eigen::Index>(i) * n_, n_);
        const auto Bq = order_matrices_[q].middleCols(static_cast<Eigen::Index>(i) * n_, n_);
        s += 2.0L * static_cast<long double>((Bp * Bq).trace().real());
      }
      T(p, q) = T(q, p) = std::round(s);
      if (std::abs(s - std::round(s)) > 1e-6L * std::max<long double>(1, std::abs(s))) {
        throw PrecisionFailure(name_ + ": reduced trace form entry is not close to an integer");
      }
    }
  }
  const long double det = T.fullPivLu().determinant();
  const long double rounded = std::round(det);
  if (std::abs(det - rounded) > 1e-3L * std::max<long double>(1, std::abs(rounded))) {
    throw PrecisionFailure(name_ + ": z-discriminant rounding residual too large");
  }
  return round_long_double(rounded);
}

Integer CyclicAlgebra::z_discriminant_exact() const {
  const int r = dimension();
  RationalMatrix T(r, r);
  std::vector<AlgebraElement> basis;
  for (int j = 0; j < r; ++j) basis.push_back(order_basis(j));
  for (int p = 0; p < r; ++p) {
    for (int q = p; q < r; ++q) T(p, q) = T(q, p) = full_trace(multiply(basis[p], basis[q]));
  }
  const Rational det = determinant(T);
  if (!is_integer(det)) throw CatalogInconsistent(name_ + ": z-discriminant is not an integer");
  return det.get_num();
}

IntVector CyclicAlgebra::random_order_coords(std::mt19937_64& gen, int bound) const {
  if (bound < 1) throw DomainError("coordinate bound must be >= 1");
  IntVector z(dimension());
  const auto width = static_cast<std::uint64_t>(2 * bound + 1);
  do {
    for (int j = 0; j < dimension(); ++j) z(j) = static_cast<long long>(gen() % width) - bound;
  } while (z.isZero());
  return z;
}

}  // namespace mbl
