#include "mbl/decoder.hpp"

#include "mbl/errors.hpp"

#include <algorithm>
#include <limits>

namespace mbl {

double faded_metric(const CMatrix& Y, const std::vector<CMatrix>& H, const CMatrix& X, const BlockShape& shape) {
  return (Y - apply_blocks(H, X, shape)).squaredNorm();
}

DecodeResult ml_decode(const CMatrix& Y, const std::vector<CMatrix>& H, const Codebook& C) {
  if (C.codewords.empty()) throw DomainError("ml_decode needs a nonempty codebook");
  const BlockShape& s = C.lattice->shape();
  DecodeResult best;
  best.metric = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < C.codewords.size(); ++j) {
    const double m = faded_metric(Y, H, C.codewords[j], s);
    if (m < best.metric) {
      best.metric = m;
      best.index = j;
    }
  }
  best.coords = C.coords[best.index];
  best.nodes = C.codewords.size();
  return best;
}

namespace {

RMatrix faded_real_basis(const MatrixLattice& L, double alpha, const std::vector<CMatrix>& H) {
  const BlockShape& s = L.shape();
  const int rows = static_cast<int>(H.front().rows());
  RMatrix B(2 * rows * s.cols(), L.rank());
  for (int j = 0; j < L.rank(); ++j) B.col(j) = realify(apply_blocks(H, alpha * L.basis()[j], s));
  return B;
}

void check_channel(const std::vector<CMatrix>& H, const BlockShape& s) {
  if (static_cast<int>(H.size()) != s.k) throw ShapeMismatch("need one channel block per fading block");
  for (const auto& Hi : H) {
    if (Hi.cols() != s.rows) throw ShapeMismatch("channel block has wrong number of columns");
    if (Hi.rows() < Hi.cols()) throw DomainError("lattice decoding needs nr >= n");
    Eigen::JacobiSVD<CMatrix> svd(Hi);
    if (!(svd.singularValues().minCoeff() > 1e-12)) throw SingularChannel("channel block is rank deficient");
  }
}

}  // namespace

LatticeDecoder::LatticeDecoder(const MatrixLattice& L, double alpha, const CMatrix& shift,
                               const std::vector<CMatrix>& H, std::uint64_t budget)
    : shape_(L.shape()),
      H_(H),
      faded_shift_((check_channel(H, L.shape()), apply_blocks(H, shift, L.shape()))),
      enumerator_(faded_real_basis(L, alpha, H), budget),
      lattice_(L),
      alpha_(alpha),
      shift_(shift) {}

DecodeResult LatticeDecoder::decode(const CMatrix& Y) const {
  const ClosestPoint cp = enumerator_.closest(realify(Y - faded_shift_));
  DecodeResult r;
  r.coords = cp.coords;
  r.nodes = cp.nodes;
  r.exact = cp.exact;
  r.metric = faded_metric(Y, H_, shift_ + alpha_ * lattice_.point(cp.coords), shape_);
  return r;
}

DecodeResult lattice_decode(const CMatrix& Y, const std::vector<CMatrix>& H, double alpha, const MatrixLattice& L,
                            const CMatrix& shift, std::uint64_t budget) {
  return LatticeDecoder(L, alpha, shift, H, budget).decode(Y);
}

QrReduced qr_reduce(const CMatrix& Y, const std::vector<CMatrix>& H) {
  if (H.empty()) throw ShapeMismatch("no channel blocks");
  const Eigen::Index n = H.front().cols();
  const Eigen::Index nr = H.front().rows();
  const auto k = static_cast<Eigen::Index>(H.size());
  if (nr < n) throw DomainError("qr_reduce needs nr >= n");
  if (Y.rows() != nr || Y.cols() != n * k) throw ShapeMismatch("received matrix shape mismatch");
  QrReduced out;
  out.Y.resize(n, n * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const CMatrix& Hi = H[i];
    if (Hi.rows() != nr || Hi.cols() != n) throw ShapeMismatch("channel blocks differ in shape");
    Eigen::HouseholderQR<CMatrix> qr(Hi);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(nr, n);
    CMatrix R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double mag = std::abs(R(j, j));
      if (!(mag > 1e-12 * std::max(1.0, Hi.norm()))) throw SingularChannel("channel block is rank deficient");
      const Complex ph = R(j, j) / mag;
      R.row(j) *= std::conj(ph);
      Q.col(j) *= ph;
    }
    out.Y.middleCols(i * n, n) = Q.adjoint() * Y.middleCols(i * n, n);
    out.R.push_back(std::move(R));
    out.Q.push_back(std::move(Q));
  }
  return out;
}

double mismatched_bound(const CMatrix& H, const CMatrix& X) {
  if (H.cols() != X.rows()) throw ShapeMismatch("H columns must match X rows");
  Eigen::SelfAdjointEigenSolver<CMatrix> eh(H.adjoint() * H, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<CMatrix> ex(X * X.adjoint(), Eigen::EigenvaluesOnly);
  const RVector lam = eh.eigenvalues();  // ascending
  const RVector l = ex.eigenvalues();    // ascending; use reversed
  const Eigen::Index m = lam.size();
  double s = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) s += std::max(0.0, lam(j)) * std::max(0.0, l(m - 1 - j));
  return s;
}

}  // namespace mbl
