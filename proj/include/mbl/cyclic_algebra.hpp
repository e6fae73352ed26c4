#pragma once

#include "mbl/catalog.hpp"
#include "mbl/lattice.hpp"
#include "mbl/numfield.hpp"

#include <memory>
#include <random>
#include <vector>

namespace mbl {

class CyclicAlgebra;

// x_0 + u x_1 + ... + u^{n-1} x_{n-1} with x_c in E. Coordinates are over the
// Q-basis w_a eta^b u^c of the algebra, flat index (c * n + b) * 2k + a.
class AlgebraElement {
 public:
  AlgebraElement(const CyclicAlgebra& owner, RationalVector coords);

  const CyclicAlgebra& algebra() const { return *owner_; }
  const RationalVector& coords() const { return coords_; }
  bool is_zero() const;
  bool is_integral() const;

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  bool operator==(const AlgebraElement& o) const;

 private:
  const CyclicAlgebra* owner_;
  RationalVector coords_;
};

/// Cyclic algebra (E/K, sigma, gamma) of degree n with E = K[eta]/(rel_poly)
/// and relations x u = u sigma(x) for x in E, u^n = gamma.
///
/// Each chosen embedding beta_i of K is extended to E by sending eta to a
/// fixed root rho_i of the embedded relative polynomial (largest real part,
/// then largest imaginary part).
class CyclicAlgebra {
 public:
  // Checks: rel_poly monic of degree n with O_K coefficients, sigma(eta) a
  // root of rel_poly, sigma of exact order n, gamma nonzero in O_K.
  static std::shared_ptr<const CyclicAlgebra> create(const AlgebraRecord& record,
                                                     std::shared_ptr<const NumberField> center);
  // M_1(K) = K, i.e. E = K and u = gamma = 1.
  static std::shared_ptr<const CyclicAlgebra> trivial(std::shared_ptr<const NumberField> center);

  const std::string& name() const { return name_; }
  const NumberField& center() const { return *center_; }
  std::shared_ptr<const NumberField> center_ptr() const { return center_; }
  int n() const { return n_; }
  int k() const { return center_->half_degree(); }
  bool division_asserted() const { return division_; }
  const RationalVector& gamma() const { return gamma_; }
  BlockShape shape() const { return {n_, n_, k()}; }
  // Q-dimension 2k n^2 of the algebra (and rank of the natural order).
  int dimension() const { return 2 * k() * n_ * n_; }
  int e_dimension() const { return 2 * k() * n_; }

  // --- E arithmetic (coords: index b * 2k + a for w_a eta^b) ---
  RationalVector e_multiply(const RationalVector& x, const RationalVector& y) const;
  RationalVector e_sigma(const RationalVector& x, int power = 1) const;
  RationalVector e_from_k(const RationalVector& k_coords) const;
  // Image of an E element under the embedding extending beta_i (i < k).
  Complex e_embed(const RationalVector& x, int i) const;
  // Chosen value of eta under embedding i.
  Complex eta_root(int i) const { return eta_roots_.at(i); }

  // --- algebra elements ---
  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement u() const;
  AlgebraElement from_components(const std::vector<RationalVector>& x) const;  // x_0..x_{n-1} in E
  AlgebraElement from_integers(const IntVector& coords) const;
  std::vector<RationalVector> components(const AlgebraElement& a) const;
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;

  // alpha_i(phi(a)), n x n.
  CMatrix left_regular(const AlgebraElement& a, int i) const;
  // (alpha_1(phi(a)), ..., alpha_k(phi(a))), n x nk.
  CMatrix multiblock_embed(const AlgebraElement& a) const;

  // det phi(a) as an element of K (exact).
  RationalVector reduced_norm(const AlgebraElement& a) const;
  // |N_{K/Q}(Nrd(a))| = |pdet(multiblock_embed(a))|^2 (exact).
  Rational pdet_abs_squared(const AlgebraElement& a) const;
  // Tr_{K/Q}(Trd(a)) with Trd = trace of phi (exact).
  Rational full_trace(const AlgebraElement& a) const;

  // Z-basis of the natural order: the elements w_a eta^b u^c, flat order.
  AlgebraElement order_basis(int index) const;
  // Lattice spanned by multiblock_embed of the order basis.
  MatrixLattice order_lattice() const;
  // det(Tr_{K/Q}(Trd(b_i b_j))) evaluated numerically at the embeddings and
  // rounded; PrecisionFailure when the residual exceeds 1e-3 relative.
  Integer z_discriminant() const;
  // The same determinant in exact arithmetic.
  Integer z_discriminant_exact() const;

  // Uniform integer coordinates in [-bound, bound], not all zero.
  IntVector random_order_coords(std::mt19937_64& gen, int bound) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  CyclicAlgebra() = default;
  void build();
  int flat(int c, int b, int a) const { return (c * n_ + b) * center_->degree() + a; }

  std::string name_;
  std::shared_ptr<const NumberField> center_;
  int n_ = 1;
  std::vector<RationalVector> rel_poly_;  // n+1 K elements
  RationalVector sigma_eta_;              // E element
  RationalVector gamma_;                  // K element
  bool division_ = false;
  std::vector<std::string> warnings_;

  // sigma_pow_[j] is the K-linear matrix of sigma^j on E in the basis eta^b:
  // column b holds sigma^j(eta^b) as an E element.
  std::vector<std::vector<RationalVector>> sigma_pow_;
  std::vector<Complex> eta_roots_;
  std::vector<CMatrix> order_matrices_;  // multiblock_embed(order_basis(j))
};

}  // namespace mbl
