#include "mbl/numfield.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mbl {

namespace {

using LComplex = std::complex<long double>;

LComplex eval_poly(const std::vector<Integer>& p, LComplex z) {
  LComplex acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + static_cast<long double>(it->get_d());
  return acc;
}

LComplex eval_poly_derivative(const std::vector<Integer>& p, LComplex z) {
  LComplex acc = 0;
  for (std::size_t j = p.size() - 1; j >= 1; --j) {
    acc = acc * z + static_cast<long double>(p[j].get_d()) * static_cast<long double>(j);
  }
  return acc;
}

long double poly_scale(const std::vector<Integer>& p, LComplex z) {
  long double s = 0;
  long double zn = 1;
  for (const auto& c : p) {
    s += std::abs(static_cast<long double>(c.get_d())) * zn;
    zn *= std::abs(z);
  }
  return s;
}

LComplex eval_rational_poly(const RationalVector& p, LComplex z) {
  LComplex acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + static_cast<long double>(it->get_d());
  return acc;
}

bool near_integer(long double v, long double tol) { return std::abs(v - std::round(v)) < tol; }

}  // namespace

std::vector<Integer> power_sums(const std::vector<Integer>& a, int count) {
  const int d = static_cast<int>(a.size()) - 1;
  std::vector<Integer> p(count);
  if (count > 0) p[0] = d;
  for (int m = 1; m < count; ++m) {
    Integer s = 0;
    // Newton: p_m = -m a_{d-m} - sum_{i=1}^{m-1} a_{d-i} p_{m-i}   (m <= d)
    //         p_m = -sum_{i=1}^{d} a_{d-i} p_{m-i}                 (m > d)
    const int top = std::min(m - 1, d);
    for (int i = 1; i <= top; ++i) s += a[d - i] * p[m - i];
    if (m <= d) s += m * a[d - m];
    p[m] = -s;
  }
  return p;
}

RationalVector reduce_mod(RationalVector poly, const std::vector<Integer>& f) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int j = static_cast<int>(poly.size()) - 1; j >= d; --j) {
    if (poly[j] == 0) continue;
    Rational c = poly[j];
    for (int i = 0; i <= d; ++i) poly[j - d + i] -= c * Rational(f[i]);
  }
  poly.resize(d, Rational(0));
  return poly;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const NumberField& field, RationalVector coords)
    : field_(&field), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != field.degree()) {
    throw ShapeMismatch("field element needs " + std::to_string(field.degree()) + " coordinates");
  }
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return is_integer(q); });
}

Rational FieldElement::trace() const { return field_->trace(coords_); }
Rational FieldElement::norm() const { return field_->norm(coords_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  if (field_ != o.field_) throw ShapeMismatch("elements of different fields");
  RationalVector c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
  return FieldElement(*field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  if (field_ != o.field_) throw ShapeMismatch("elements of different fields");
  RationalVector c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - o.coords_[i];
  return FieldElement(*field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  RationalVector c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return FieldElement(*field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  if (field_ != o.field_) throw ShapeMismatch("elements of different fields");
  return FieldElement(*field_, field_->multiply(coords_, o.coords_));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  RationalVector c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] * q;
  return FieldElement(*field_, std::move(c));
}

bool FieldElement::operator==(const FieldElement& o) const {
  return field_ == o.field_ && coords_ == o.coords_;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const NumberField> NumberField::create(const FieldRecord& rec) {
  std::shared_ptr<NumberField> K(new NumberField());
  K->name_ = rec.name;
  K->degree_ = rec.degree;
  K->min_poly_ = rec.min_poly;
  K->basis_ = rec.basis;
  K->disc_expected_ = rec.disc_expected;
  K->declared_suboptimal_ = rec.suboptimal;

  const int d = rec.degree;
  if (d < 2 || d % 2 != 0) throw CatalogInconsistent(rec.name + ": degree must be even and >= 2");
  if (static_cast<int>(rec.min_poly.size()) != d + 1) {
    throw CatalogInconsistent(rec.name + ": min_poly length does not match degree");
  }
  if (rec.min_poly.back() != 1) throw CatalogInconsistent(rec.name + ": min_poly must be monic");
  if (static_cast<int>(rec.basis.size()) != d) {
    throw CatalogInconsistent(rec.name + ": integral basis needs " + std::to_string(d) + " elements");
  }
  for (auto& w : K->basis_) {
    if (static_cast<int>(w.size()) > d) throw CatalogInconsistent(rec.name + ": basis polynomial degree >= field degree");
    w.resize(d, Rational(0));
  }

  K->compute_roots();
  K->check_irreducible();
  K->build_exact_tables();

  if (K->disc_expected_ && *K->disc_expected_ != K->discriminant_) {
    throw CatalogInconsistent(rec.name + ": discriminant " + K->discriminant_.get_str() + " != expected " +
                              K->disc_expected_->get_str());
  }
  return K;
}

void NumberField::compute_roots() {
  const int d = degree_;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -min_poly_[i].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion.cast<Complex>(), false);
  if (solver.info() != Eigen::Success) throw PrecisionFailure(name_ + ": companion eigenvalues failed");

  std::vector<LComplex> raw;
  root_residual_ = 0.0;
  for (int i = 0; i < d; ++i) {
    LComplex z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
    for (int it = 0; it < 60; ++it) {
      LComplex fz = eval_poly(min_poly_, z);
      LComplex dz = eval_poly_derivative(min_poly_, z);
      if (std::abs(dz) == 0) break;
      LComplex step = fz / dz;
      z -= step;
      if (std::abs(step) < 1e-19L * std::max<long double>(1, std::abs(z))) break;
    }
    const long double residual = std::abs(eval_poly(min_poly_, z));
    const long double scale = std::max<long double>(1, poly_scale(min_poly_, z));
    if (residual > 1e-12L * scale) {
      throw PrecisionFailure(name_ + ": root polishing did not reach residual 1e-12");
    }
    root_residual_ = std::max(root_residual_, static_cast<double>(residual));
    raw.push_back(z);
  }

  for (int i = 0; i < d; ++i) {
    if (std::abs(raw[i].imag()) < 1e-9L) {
      std::ostringstream os;
      os << name_ << ": real root " << static_cast<double>(raw[i].real()) << " (field is not totally complex)";
      throw NotTotallyComplex(os.str());
    }
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(raw[i] - raw[j]) < 1e-8L) throw CatalogInconsistent(name_ + ": min_poly has a repeated root");
    }
  }

  std::vector<LComplex> upper;
  for (const auto& z : raw) {
    if (z.imag() > 0) upper.push_back(z);
  }
  if (static_cast<int>(upper.size()) * 2 != d) throw CatalogInconsistent(name_ + ": roots do not pair into conjugates");
  std::sort(upper.begin(), upper.end(),
            [](const LComplex& a, const LComplex& b) { return std::arg(a) < std::arg(b); });
  std::vector<bool> used(d, false);
  std::vector<LComplex> ordered(upper.begin(), upper.end());
  for (const auto& z : upper) {
    int best = -1;
    long double best_dist = 1e-8L;
    for (int j = 0; j < d; ++j) {
      if (used[j] || raw[j].imag() >= 0) continue;
      const long double dist = std::abs(raw[j] - std::conj(z));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    if (best < 0) throw CatalogInconsistent(name_ + ": roots are not closed under conjugation");
    used[best] = true;
    ordered.push_back(std::conj(z));
  }

  roots_.clear();
  basis_at_root_.assign(d, std::vector<Complex>(d));
  for (int r = 0; r < d; ++r) {
    roots_.emplace_back(static_cast<double>(ordered[r].real()), static_cast<double>(ordered[r].imag()));
    for (int a = 0; a < d; ++a) {
      const LComplex v = eval_rational_poly(basis_[a], ordered[r]);
      basis_at_root_[r][a] = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
}

void NumberField::check_irreducible() {
  const int d = degree_;
  // A monic integer polynomial factors over Q iff it has a monic integer
  // factor; such a factor is the product of (x - r) over a subset of roots.
  constexpr int kMaxCheckedDegree = 16;
  if (d > kMaxCheckedDegree) {
    warnings_.push_back("irreducibility of degree-" + std::to_string(d) + " min_poly trusted from catalog");
    return;
  }
  std::vector<LComplex> r;
  for (const auto& z : roots_) r.emplace_back(z.real(), z.imag());
  for (int size = 1; size <= d / 2; ++size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<LComplex> prod{1};
      for (int i : idx) {
        std::vector<LComplex> next(prod.size() + 1, 0);
        for (std::size_t j = 0; j < prod.size(); ++j) {
          next[j + 1] += prod[j];
          next[j] -= prod[j] * r[i];
        }
        prod = std::move(next);
      }
      bool integral = true;
      for (const auto& c : prod) {
        if (std::abs(c.imag()) > 1e-6L || !near_integer(c.real(), 1e-6L)) {
          integral = false;
          break;
        }
      }
      if (integral) {
        // Confirm by exact division.
        RationalVector g(prod.size());
        for (std::size_t j = 0; j < prod.size(); ++j) g[j] = Rational(static_cast<long>(std::llround(prod[j].real())));
        RationalVector rem(min_poly_.begin(), min_poly_.end());
        for (int j = d; j >= size; --j) {
          Rational c = rem[j];
          if (c == 0) continue;
          for (int i = 0; i <= size; ++i) rem[j - size + i] -= c * g[i];
        }
        bool zero = std::all_of(rem.begin(), rem.begin() + size, [](const Rational& q) { return q == 0; });
        if (zero) throw CatalogInconsistent(name_ + ": min_poly is reducible over Q");
      }
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == d - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

void NumberField::build_exact_tables() {
  const int d = degree_;
  to_power_ = RationalMatrix(d, d);
  for (int a = 0; a < d; ++a) {
    for (int j = 0; j < d; ++j) to_power_(a, j) = basis_[a][j];
  }
  try {
    from_power_ = inverse(to_power_);
  } catch (const DomainError&) {
    throw CatalogInconsistent(name_ + ": basis is linearly dependent");
  }

  auto coords_of_power = [&](const RationalVector& p) {
    RationalVector c(d, Rational(0));
    for (int j = 0; j < d; ++j) {
      if (p[j] == 0) continue;
      for (int b = 0; b < d; ++b) c[b] += p[j] * from_power_(j, b);
    }
    return c;
  };

  mult_table_.assign(d * d, RationalVector());
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      RationalVector prod(2 * d - 1, Rational(0));
      for (int i = 0; i < d; ++i) {
        if (basis_[a][i] == 0) continue;
        for (int j = 0; j < d; ++j) prod[i + j] += basis_[a][i] * basis_[b][j];
      }
      RationalVector c = coords_of_power(reduce_mod(std::move(prod), min_poly_));
      for (const auto& q : c) {
        if (!is_integer(q)) throw CatalogInconsistent(name_ + ": basis is not closed under multiplication");
      }
      mult_table_[a * d + b] = c;
      mult_table_[b * d + a] = c;
    }
  }

  const std::vector<Integer> p = power_sums(min_poly_, d);
  basis_trace_.assign(d, Rational(0));
  for (int a = 0; a < d; ++a) {
    for (int j = 0; j < d; ++j) basis_trace_[a] += basis_[a][j] * Rational(p[j]);
  }

  RationalMatrix form(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) form(a, b) = trace(mult_table_[a * d + b]);
  }
  Rational disc = determinant(form);
  if (!is_integer(disc)) throw CatalogInconsistent(name_ + ": trace-form determinant is not an integer");
  discriminant_ = disc.get_num();
  if (discriminant_ == 0) throw CatalogInconsistent(name_ + ": zero discriminant");
}

Integer NumberField::discriminant_numeric() const {
  // Tr(w_a w_b) from the embeddings is an integer; round each entry and take
  // the determinant exactly.
  const int d = degree_;
  RationalMatrix form(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      long double s = 0;
      for (int r = 0; r < d; ++r) {
        s += static_cast<long double>((basis_at_root_[r][a] * basis_at_root_[r][b]).real());
      }
      const long double rounded = std::round(s);
      if (std::abs(s - rounded) > 1e-6L * std::max<long double>(1, std::abs(rounded))) {
        throw PrecisionFailure(name_ + ": numeric trace form is not integral");
      }
      form(a, b) = Rational(static_cast<long>(rounded));
    }
  }
  const Rational det = determinant(form);
  return det.get_num();
}

double NumberField::root_discriminant() const {
  return std::pow(std::abs(discriminant_.get_d()), 1.0 / degree_);
}

FieldElement NumberField::zero() const { return FieldElement(*this, RationalVector(degree_, Rational(0))); }

FieldElement NumberField::one() const { return from_power_basis(RationalVector{Rational(1)}); }

FieldElement NumberField::element(RationalVector coords) const { return FieldElement(*this, std::move(coords)); }

FieldElement NumberField::from_power_basis(const RationalVector& poly) const {
  RationalVector reduced = reduce_mod(poly, min_poly_);
  RationalVector c(degree_, Rational(0));
  for (int j = 0; j < degree_; ++j) {
    if (reduced[j] == 0) continue;
    for (int b = 0; b < degree_; ++b) c[b] += reduced[j] * from_power_(j, b);
  }
  return FieldElement(*this, std::move(c));
}

RationalVector NumberField::to_power_basis(const FieldElement& x) const {
  RationalVector p(degree_, Rational(0));
  for (int a = 0; a < degree_; ++a) {
    if (x.coords()[a] == 0) continue;
    for (int j = 0; j < degree_; ++j) p[j] += x.coords()[a] * to_power_(a, j);
  }
  return p;
}

FieldElement NumberField::generator() const {
  RationalVector p(2, Rational(0));
  p[1] = 1;
  return from_power_basis(p);
}

RationalVector NumberField::multiply(const RationalVector& x, const RationalVector& y) const {
  const int d = degree_;
  RationalVector out(d, Rational(0));
  Rational xy;
  for (int a = 0; a < d; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < d; ++b) {
      if (y[b] == 0) continue;
      xy = x[a] * y[b];
      const RationalVector& t = mult_table_[a * d + b];
      for (int c = 0; c < d; ++c) {
        if (t[c] != 0) out[c] += xy * t[c];
      }
    }
  }
  return out;
}

Rational NumberField::trace(const RationalVector& x) const {
  Rational s = 0;
  for (int a = 0; a < degree_; ++a) s += x[a] * basis_trace_[a];
  return s;
}

RationalMatrix NumberField::multiplication_matrix(const RationalVector& x) const {
  const int d = degree_;
  RationalMatrix m(d, d);
  for (int b = 0; b < d; ++b) {
    RationalVector wb(d, Rational(0));
    wb[b] = 1;
    RationalVector col = multiply(x, wb);
    for (int c = 0; c < d; ++c) m(c, b) = col[c];
  }
  return m;
}

Rational NumberField::norm(const RationalVector& x) const { return determinant(multiplication_matrix(x)); }

Complex NumberField::embed(const RationalVector& x, int root_index) const {
  Complex s = 0;
  const auto& w = basis_at_root_.at(root_index);
  for (int a = 0; a < degree_; ++a) {
    if (x[a] != 0) s += x[a].get_d() * w[a];
  }
  return s;
}

CVector NumberField::canonical_embed(const FieldElement& x) const {
  if (&x.field() != this) throw ShapeMismatch("element belongs to another field");
  const int k = half_degree();
  CVector v(k);
  for (int i = 0; i < k; ++i) v(i) = embed(x.coords(), i);
  return v;
}

}  // namespace mbl
