#pragma once

#include "mbl/rational.hpp"
#include "mbl/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mbl {

// Parsed (but unvalidated) description of a totally complex number field.
struct FieldRecord {
  std::string name;
  int degree = 0;
  std::vector<Integer> min_poly;       // ascending, monic
  std::vector<RationalVector> basis;   // each: ascending coefficients in theta
  std::optional<Integer> disc_expected;
  std::optional<bool> suboptimal;      // as declared by the catalog
};

class NumberField;

// Element of K in coordinates over the integral basis. Arithmetic is exact.
class FieldElement {
 public:
  FieldElement(const NumberField& field, RationalVector coords);

  const NumberField& field() const { return *field_; }
  const RationalVector& coords() const { return coords_; }

  bool is_zero() const;
  // Integer coordinates over the integral basis, i.e. x lies in O_K.
  bool is_integral() const;

  Rational trace() const;
  Rational norm() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator*(const Rational& q) const;
  bool operator==(const FieldElement& o) const;

 private:
  const NumberField* field_;
  RationalVector coords_;
};

/// Totally complex number field K = Q(theta) of degree 2k, together with an
/// integral basis w_1..w_2k supplied by the catalog and the k chosen complex
/// embeddings (one per conjugate pair, the root with positive imaginary part).
///
/// Instances are immutable after construction and safe to share between
/// threads.
class NumberField {
 public:
  // Validates the record: monic, irreducible, totally complex, integral basis
  // closed under multiplication, and disc_expected when present.
  static std::shared_ptr<const NumberField> create(const FieldRecord& record);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  int half_degree() const { return degree_ / 2; }
  const std::vector<Integer>& min_poly() const { return min_poly_; }
  const std::vector<RationalVector>& basis() const { return basis_; }
  const std::optional<Integer>& disc_expected() const { return disc_expected_; }
  const std::optional<bool>& declared_suboptimal() const { return declared_suboptimal_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // All 2k roots ordered so that roots()[i] is the i-th chosen embedding for
  // i < k and roots()[i + k] is its complex conjugate.
  const std::vector<Complex>& roots() const { return roots_; }
  // Largest |f(root)| after polishing.
  double root_residual() const { return root_residual_; }

  // Exact discriminant det(Tr(w_i w_j)).
  const Integer& discriminant() const { return discriminant_; }
  // Same determinant with each Tr(w_i w_j) summed over the floating embeddings
  // and rounded; throws PrecisionFailure when an entry is off an integer by
  // more than 1e-6 (relative to max(1, |entry|)).
  Integer discriminant_numeric() const;
  // |d_K|^(1/2k).
  double root_discriminant() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(RationalVector coords) const;
  // Element given by ascending coefficients in powers of theta.
  FieldElement from_power_basis(const RationalVector& poly) const;
  RationalVector to_power_basis(const FieldElement& x) const;
  // theta itself.
  FieldElement generator() const;

  RationalVector multiply(const RationalVector& a, const RationalVector& b) const;
  Rational trace(const RationalVector& a) const;
  // Matrix of y -> x*y in the integral basis (column j = coords of x*w_j).
  RationalMatrix multiplication_matrix(const RationalVector& x) const;
  Rational norm(const RationalVector& x) const;

  // Image of x under embedding `root_index` (0..2k-1, see roots()).
  Complex embed(const RationalVector& x, int root_index) const;
  // Relative canonical embedding (sigma_1(x), ..., sigma_k(x)).
  CVector canonical_embed(const FieldElement& x) const;

 private:
  NumberField() = default;
  void compute_roots();
  void check_irreducible();
  void build_exact_tables();

  std::string name_;
  int degree_ = 0;
  std::vector<Integer> min_poly_;
  std::vector<RationalVector> basis_;
  std::optional<Integer> disc_expected_;
  std::optional<bool> declared_suboptimal_;
  std::vector<std::string> warnings_;

  std::vector<Complex> roots_;
  double root_residual_ = 0.0;
  // basis_at_root_[r][a] = w_a(roots_[r])
  std::vector<std::vector<Complex>> basis_at_root_;

  RationalMatrix to_power_;    // row a: coefficients of w_a
  RationalMatrix from_power_;  // inverse of to_power_
  // mult_table_[a * d + b] = coords of w_a * w_b
  std::vector<RationalVector> mult_table_;
  RationalVector basis_trace_;
  Integer discriminant_;
};

// Integer power sums p_0..p_{count-1} of the roots of a monic polynomial.
std::vector<Integer> power_sums(const std::vector<Integer>& monic_poly, int count);

// Reduces an ascending rational polynomial modulo a monic integer polynomial.
RationalVector reduce_mod(RationalVector poly, const std::vector<Integer>& monic_poly);

}  // namespace mbl
