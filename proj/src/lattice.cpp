#include "mbl/lattice.hpp"

#include "mbl/enumeration.hpp"
#include "mbl/errors.hpp"

#include <algorithm>
#include <limits>

namespace mbl {

RVector realify(const CMatrix& X) {
  const Eigen::Index rows = X.rows();
  RVector v(2 * X.size());
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      v(2 * (c * rows + r)) = X(r, c).real();
      v(2 * (c * rows + r) + 1) = X(r, c).imag();
    }
  }
  return v;
}

CMatrix complexify(const RVector& v, int rows, int cols) {
  if (v.size() != 2 * rows * cols) throw ShapeMismatch("complexify: length does not match shape");
  CMatrix X(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) X(r, c) = Complex(v(2 * (c * rows + r)), v(2 * (c * rows + r) + 1));
  }
  return X;
}

MatrixLattice::MatrixLattice(BlockShape shape, std::vector<CMatrix> basis) : shape_(shape), basis_(std::move(basis)) {
  if (shape_.rows < 1 || shape_.n < 1 || shape_.k < 1) throw ShapeMismatch("block shape must be positive");
  if (basis_.empty()) throw DegenerateLattice("empty lattice basis");
  const int dim = shape_.real_dim();
  if (rank() > dim) throw DegenerateLattice("more basis matrices than real dimensions");
  real_basis_.resize(dim, rank());
  for (int j = 0; j < rank(); ++j) {
    if (basis_[j].rows() != shape_.rows || basis_[j].cols() != shape_.cols()) {
      throw ShapeMismatch("basis matrix " + std::to_string(j) + " has the wrong shape");
    }
    real_basis_.col(j) = realify(basis_[j]);
  }
  gram_ = real_basis_.transpose() * real_basis_;
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(gram_, Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  if (!(ev.minCoeff() > 1e-10 * ev.maxCoeff())) {
    throw DegenerateLattice("Gram matrix is numerically singular");
  }
  log_volume_ = 0.5 * ev.array().log().sum();
}

CMatrix MatrixLattice::point(const IntVector& coords) const { return point(RVector(coords.cast<double>())); }

CMatrix MatrixLattice::point(const RVector& coords) const {
  if (coords.size() != rank()) throw ShapeMismatch("coordinate vector length differs from rank");
  CMatrix X = CMatrix::Zero(shape_.rows, shape_.cols());
  for (int j = 0; j < rank(); ++j) {
    if (coords(j) != 0) X += coords(j) * basis_[j];
  }
  return X;
}

MatrixLattice MatrixLattice::scaled(double alpha) const {
  std::vector<CMatrix> b;
  b.reserve(basis_.size());
  for (const auto& B : basis_) b.push_back(alpha * B);
  return MatrixLattice(shape_, std::move(b));
}

CMatrix block(const CMatrix& X, const BlockShape& shape, int i) {
  return X.middleCols(static_cast<Eigen::Index>(i) * shape.n, shape.n);
}

Complex pdet(const CMatrix& X, const BlockShape& shape) {
  if (shape.rows != shape.n) throw ShapeMismatch("pdet needs square blocks");
  if (X.rows() != shape.rows || X.cols() != shape.cols()) throw ShapeMismatch("pdet: matrix shape mismatch");
  Complex p = 1.0;
  for (int i = 0; i < shape.k; ++i) p *= block(X, shape, i).determinant();
  return p;
}

CMatrix apply_blocks(const std::vector<CMatrix>& H, const CMatrix& X, const BlockShape& shape) {
  if (static_cast<int>(H.size()) != shape.k) throw ShapeMismatch("need one channel block per fading block");
  const Eigen::Index out_rows = H.front().rows();
  CMatrix Y(out_rows, shape.cols());
  for (int i = 0; i < shape.k; ++i) {
    if (H[i].cols() != X.rows() || H[i].rows() != out_rows) throw ShapeMismatch("channel block shape mismatch");
    Y.middleCols(static_cast<Eigen::Index>(i) * shape.n, shape.n) = H[i] * block(X, shape, i);
  }
  return Y;
}

MatrixLattice fade(const MatrixLattice& L, const std::vector<CMatrix>& H) {
  const BlockShape& s = L.shape();
  if (static_cast<int>(H.size()) != s.k) throw ShapeMismatch("need one channel block per fading block");
  for (const auto& Hi : H) {
    if (Hi.cols() != s.rows) throw ShapeMismatch("channel block has wrong number of columns");
    if (Hi.rows() == Hi.cols()) {
      if (!(std::abs(Hi.determinant()) > 1e-12)) throw SingularChannel("singular channel block");
    } else {
      Eigen::JacobiSVD<CMatrix> svd(Hi);
      if (Hi.rows() < Hi.cols() || !(svd.singularValues().minCoeff() > 1e-12)) {
        throw SingularChannel("channel block does not have full column rank");
      }
    }
  }
  BlockShape out = s;
  out.rows = static_cast<int>(H.front().rows());
  std::vector<CMatrix> basis;
  basis.reserve(L.rank());
  for (const auto& B : L.basis()) basis.push_back(apply_blocks(H, B, s));
  return MatrixLattice(out, std::move(basis));
}

HadamardSides hadamard_check(const CMatrix& X, const BlockShape& shape) {
  const double nk = shape.n * shape.k;
  HadamardSides h;
  h.abs_pdet = std::abs(pdet(X, shape));
  const double f = X.squaredNorm();
  h.bound = f > 0 ? std::exp(0.5 * nk * std::log(f) - 0.5 * nk * std::log(nk)) : 0.0;
  return h;
}

double form_eval(Form form, const CMatrix& X, const BlockShape& shape) {
  if (X.rows() != shape.rows || X.cols() != shape.cols()) throw ShapeMismatch("form argument shape mismatch");
  switch (form) {
    case Form::f1:
      return X.squaredNorm();
    case Form::f2: {
      if (shape.n != 1 || shape.rows != 1) throw ShapeMismatch("f2 is defined for n = 1 only");
      double p = 1.0;
      for (Eigen::Index i = 0; i < X.cols(); ++i) p *= std::abs(X(0, i));
      return p;
    }
    case Form::f3:
      return std::abs(pdet(X, shape));
  }
  throw ShapeMismatch("unknown form");
}

int form_degree(Form form, const BlockShape& shape) {
  switch (form) {
    case Form::f1:
      return 2;
    case Form::f2:
      return shape.k;
    case Form::f3:
      return shape.n * shape.k;
  }
  return 0;
}

HermiteResult hermite_invariant(const MatrixLattice& L, std::uint64_t budget) {
  const double scale = std::exp(2.0 * L.log_volume() / L.rank());
  Enumerator e(L.real_basis(), budget);
  HermiteResult h;
  try {
    ClosestPoint s = e.shortest();
    h.witness = {s.dist2, s.coords, s.nodes};
  } catch (const BudgetExceeded& ex) {
    throw BudgetExceeded(ex.what(), ex.best_so_far() / scale);
  }
  h.hermite = h.witness.norm2 / scale;
  return h;
}

MinPdetResult min_pdet(const MatrixLattice& L, double radius, std::uint64_t budget) {
  if (!(radius > 0)) throw DomainError("min_pdet radius must be positive");
  Enumerator e(L.real_basis(), budget);
  MinPdetResult res;
  res.radius = radius;
  res.value = std::numeric_limits<double>::infinity();
  e.for_each_in_ball(RVector::Zero(L.shape().real_dim()), radius * radius, [&](const IntVector& z, double d2) {
    if (z.isZero() || d2 > radius * radius) return;
    ++res.points;
    const double p = std::abs(pdet(L.point(z), L.shape()));
    if (p < res.value) {
      res.value = p;
      res.coords = z;
    }
  });
  if (res.points == 0) throw EmptyBall("no nonzero lattice point within radius " + std::to_string(radius));
  return res;
}

double normalized_min_det(const MatrixLattice& L, double det_min) {
  const double nk = L.shape().n * L.shape().k;
  return det_min * std::exp(-nk * L.log_volume() / L.rank());
}

double reduced_hermite_lower(const BlockShape& shape, double delta) {
  const double nk = shape.n * shape.k;
  return nk * std::pow(delta, 2.0 / nk);
}

std::vector<CMatrix> adversarial_fade(const CMatrix& X, const BlockShape& shape) {
  const double p = std::abs(pdet(X, shape));
  if (!(p > 0)) throw SingularChannel("adversarial fade needs a point with nonzero pdet");
  const double c = std::pow(p, 1.0 / (shape.n * shape.k));
  std::vector<CMatrix> H;
  for (int i = 0; i < shape.k; ++i) H.push_back(c * block(X, shape, i).inverse());
  return H;
}

InvariantReport compute_invariants(const MatrixLattice& L, double pdet_radius, std::optional<double> algebraic_det_min,
                                   std::uint64_t budget) {
  InvariantReport rep;
  rep.volume = L.volume();
  HermiteResult h = hermite_invariant(L, budget);
  rep.hermite = h.hermite;
  rep.shortest_vector = h.witness.coords;
  MinPdetResult m = min_pdet(L, pdet_radius, budget);
  rep.det_min_radius = pdet_radius;
  if (algebraic_det_min) {
    if (m.value < *algebraic_det_min * (1.0 - 1e-6)) {
      throw CatalogInconsistent("ball search found |pdet| " + std::to_string(m.value) +
                                " below the algebraic det_min certificate");
    }
    rep.det_min = *algebraic_det_min;
    rep.certificate = DetMinCertificate::algebraic;
  } else {
    rep.det_min = m.value;
    rep.certificate = DetMinCertificate::enumeration;
  }
  rep.delta = normalized_min_det(L, rep.det_min);
  rep.rh_lower = reduced_hermite_lower(L.shape(), rep.delta);
  return rep;
}

std::string to_string(DetMinCertificate c) {
  return c == DetMinCertificate::algebraic ? "algebraic" : "enumeration";
}

}  // namespace mbl
