#include "mbl/enumeration.hpp"

#include "mbl/errors.hpp"

#include <cmath>
#include <limits>

namespace mbl {

namespace {

class BudgetHit {};

// Depth-first Schnorr-Euchner search on an upper-triangular R.
struct Search {
  const RMatrix& R;
  const RVector& y;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  double radius2;
  bool shrink;          // CVP/SVP: shrink radius on every improvement
  bool exclude_zero;    // SVP
  IntVector z;
  IntVector best;
  double best_dist = std::numeric_limits<double>::infinity();
  const std::function<void(const IntVector&, double)>* visit = nullptr;

  Search(const RMatrix& R_, const RVector& y_, std::uint64_t budget_, double radius2_, bool shrink_, bool exclude_zero_)
      : R(R_), y(y_), budget(budget_), radius2(radius2_), shrink(shrink_), exclude_zero(exclude_zero_),
        z(IntVector::Zero(R_.cols())) {}

  void run() { level(static_cast<int>(R.cols()) - 1, 0.0); }

  void level(int i, double partial) {
    if (++nodes > budget) throw BudgetHit();
    const int r = static_cast<int>(R.cols());
    double s = y(i);
    for (int j = i + 1; j < r; ++j) s -= R(i, j) * static_cast<double>(z(j));
    const double c = s / R(i, i);
    const double x0 = std::round(c);
    const double dir = (c >= x0) ? 1.0 : -1.0;
    for (long step = 0;; ++step) {
      // offsets 0, +1, -1, +2, -2, ... in the direction of c
      const long m = (step + 1) / 2;
      const double x = x0 + ((step % 2 == 1) ? dir * m : -dir * m);
      const double diff = R(i, i) * (x - c);
      const double pd = partial + diff * diff;
      // |x - c| is nondecreasing along the zig-zag, so the first miss ends the level.
      if (pd > radius2) break;
      if (std::abs(x) > 9.0e15) throw PrecisionFailure("enumeration coordinate overflow");
      z(i) = static_cast<long long>(x);
      if (i == 0) {
        if (exclude_zero && z.isZero()) continue;
        if (visit) {
          (*visit)(z, pd);
        } else if (pd < best_dist) {
          best_dist = pd;
          best = z;
          if (shrink) radius2 = pd;
        }
      } else {
        level(i - 1, pd);
      }
    }
    z(i) = 0;
  }
};

}  // namespace

Enumerator::Enumerator(const RMatrix& basis, std::uint64_t budget)
    : dim_(static_cast<int>(basis.rows())), rank_(static_cast<int>(basis.cols())), budget_(budget), basis_(basis) {
  if (rank_ > dim_) throw ShapeMismatch("more basis vectors than dimensions");
  LllResult lll = lll_reduce(basis);
  reduced_ = std::move(lll.basis);
  unimodular_ = std::move(lll.unimodular);
  Eigen::HouseholderQR<RMatrix> qr(reduced_);
  q_ = qr.householderQ() * RMatrix::Identity(dim_, rank_);
  r_ = qr.matrixQR().topRows(rank_).triangularView<Eigen::Upper>();
  for (int i = 0; i < rank_; ++i) {
    if (r_(i, i) < 0) {
      r_.row(i) *= -1.0;
      q_.col(i) *= -1.0;
    }
    if (!(r_(i, i) > 0)) throw DegenerateLattice("enumeration basis is rank deficient");
  }
}

RVector Enumerator::project(const RVector& target, double* residual2) const {
  if (target.size() != dim_) throw ShapeMismatch("target dimension mismatch");
  RVector y = q_.transpose() * target;
  if (residual2) *residual2 = std::max(0.0, (target - q_ * y).squaredNorm());
  return y;
}

IntVector Enumerator::to_original(const IntVector& zr) const { return unimodular_ * zr; }

RVector Enumerator::solve(const RVector& v) const {
  RVector y = project(v, nullptr);
  RVector zr = r_.triangularView<Eigen::Upper>().solve(y);
  return unimodular_.cast<double>() * zr;
}

double Enumerator::covering_radius_bound() const { return 0.5 * r_.diagonal().norm(); }

ClosestPoint Enumerator::babai(const RVector& target) const {
  const RVector y = project(target, nullptr);
  IntVector z = IntVector::Zero(rank_);
  for (int i = rank_ - 1; i >= 0; --i) {
    double s = y(i);
    for (int j = i + 1; j < rank_; ++j) s -= r_(i, j) * static_cast<double>(z(j));
    z(i) = static_cast<long long>(std::round(s / r_(i, i)));
  }
  ClosestPoint out;
  out.coords = to_original(z);
  out.dist2 = (basis_ * out.coords.cast<double>() - target).squaredNorm();
  out.exact = false;
  return out;
}

ClosestPoint Enumerator::closest(const RVector& target) const {
  const RVector y = project(target, nullptr);
  // Babai point bounds the initial radius.
  IntVector zb = IntVector::Zero(rank_);
  double babai_dist = 0.0;
  for (int i = rank_ - 1; i >= 0; --i) {
    double s = y(i);
    for (int j = i + 1; j < rank_; ++j) s -= r_(i, j) * static_cast<double>(zb(j));
    zb(i) = static_cast<long long>(std::round(s / r_(i, i)));
    const double d = r_(i, i) * (static_cast<double>(zb(i)) - s / r_(i, i));
    babai_dist += d * d;
  }
  Search s(r_, y, budget_, babai_dist * (1.0 + 1e-12) + 1e-300, true, false);
  s.best = zb;
  s.best_dist = babai_dist;
  ClosestPoint out;
  try {
    s.run();
  } catch (const BudgetHit&) {
    out.exact = false;
  }
  out.nodes = s.nodes;
  out.coords = to_original(s.best);
  out.dist2 = (basis_ * out.coords.cast<double>() - target).squaredNorm();
  return out;
}

ClosestPoint Enumerator::shortest() const {
  const RVector y = RVector::Zero(rank_);
  double start = std::numeric_limits<double>::infinity();
  int start_col = 0;
  for (int j = 0; j < rank_; ++j) {
    const double v = reduced_.col(j).squaredNorm();
    if (v < start) {
      start = v;
      start_col = j;
    }
  }
  Search s(r_, y, budget_, start * (1.0 + 1e-12), true, true);
  s.best = IntVector::Zero(rank_);
  s.best(start_col) = 1;
  s.best_dist = start;
  try {
    s.run();
  } catch (const BudgetHit&) {
    throw BudgetExceeded("shortest-vector enumeration exceeded " + std::to_string(budget_) + " nodes", s.best_dist);
  }
  ClosestPoint out;
  out.nodes = s.nodes;
  out.coords = to_original(s.best);
  out.dist2 = (basis_ * out.coords.cast<double>()).squaredNorm();
  return out;
}

std::uint64_t Enumerator::for_each_in_ball(const RVector& center, double radius2,
                                           const std::function<void(const IntVector&, double)>& visit) const {
  double residual2 = 0.0;
  const RVector y = project(center, &residual2);
  const double inner = radius2 - residual2;
  if (inner < 0) return 0;
  Search s(r_, y, budget_, inner * (1.0 + 1e-12) + 1e-300, false, false);
  const std::function<void(const IntVector&, double)> wrapped = [&](const IntVector& zr, double) {
    const IntVector zo = to_original(zr);
    visit(zo, (basis_ * zo.cast<double>() - center).squaredNorm());
  };
  s.visit = &wrapped;
  try {
    s.run();
  } catch (const BudgetHit&) {
    throw BudgetExceeded("ball enumeration exceeded " + std::to_string(budget_) + " nodes",
                         std::numeric_limits<double>::quiet_NaN());
  }
  return s.nodes;
}

}  // namespace mbl
