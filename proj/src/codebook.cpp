#include "mbl/codebook.hpp"

#include "mbl/errors.hpp"
#include "mbl/lattice_io.hpp"
#include "mbl/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mbl {

double log_c_nk(int n, int k) {
  const double m = static_cast<double>(n) * n * k;
  return m * std::log(kPi * n * k) - std::lgamma(m + 1.0);
}

double scaling_alpha(double P, double R, int n, int k, double volume) {
  if (!(P > 0) || !(volume > 0) || n < 1 || k < 1 || R < 0) throw DomainError("scaling_alpha: invalid arguments");
  const double m = static_cast<double>(n) * n * k;
  const double log_alpha2 = log_c_nk(n, k) / m + std::log(P) - (R / n) * kLn2 - std::log(volume) / m;
  return std::exp(0.5 * log_alpha2);
}

double ball_volume(int dim, double radius) {
  const double h = 0.5 * dim;
  return std::exp(h * std::log(kPi) - std::lgamma(h + 1.0) + dim * std::log(radius));
}

ShiftedLattice::ShiftedLattice(std::shared_ptr<const MatrixLattice> L, double alpha, CMatrix shift,
                               std::uint64_t budget)
    : lattice_(std::move(L)), alpha_(alpha), shift_(std::move(shift)), shift_real_(realify(shift_)),
      enumerator_(alpha_ * lattice_->real_basis(), budget) {
  if (shift_.rows() != lattice_->shape().rows || shift_.cols() != lattice_->shape().cols()) {
    throw ShapeMismatch("shift shape does not match lattice");
  }
}

CMatrix ShiftedLattice::point(const IntVector& z) const { return shift_ + alpha_ * lattice_->point(z); }

ClosestPoint ShiftedLattice::nearest(const CMatrix& X) const {
  return enumerator_.closest(realify(X) - shift_real_);
}

std::size_t ShiftedLattice::for_each_in_ball(double radius2,
                                             const std::function<void(const IntVector&, double)>& visit) const {
  std::size_t count = 0;
  enumerator_.for_each_in_ball(-shift_real_, radius2, [&](const IntVector& z, double) {
    const double e = point(z).squaredNorm();
    if (e <= radius2) {
      ++count;
      visit(z, e);
    }
  });
  return count;
}

std::size_t ShiftedLattice::count_in_ball(double radius2) const {
  return for_each_in_ball(radius2, [](const IntVector&, double) {});
}

CMatrix random_shift(const MatrixLattice& L, double alpha, Rng& rng) {
  RVector u(L.rank());
  for (int j = 0; j < L.rank(); ++j) u(j) = rng.uniform();
  return alpha * L.point(u);
}

double Codebook::realized_rate() const {
  if (codewords.empty()) return 0.0;
  const BlockShape& s = lattice->shape();
  return std::log2(static_cast<double>(codewords.size())) / (s.n * s.k);
}

Codebook carve(std::shared_ptr<const MatrixLattice> L, double P, double R, int trials, std::uint64_t seed,
               const CarveOptions& options) {
  if (trials < 1) throw DomainError("carve needs at least one trial");
  if (!L->full_rank()) throw DegenerateLattice("carve needs a full-rank lattice");
  const BlockShape& s = L->shape();
  const double nk = s.n * s.k;
  const double alpha = scaling_alpha(P, R, s.n, s.k, L->volume());
  const double radius2 = P * nk;
  const double target = std::exp2(std::floor(R * nk));

  Codebook C;
  C.lattice = L;
  C.alpha = alpha;
  C.power = P;
  C.rate_target = R;
  std::size_t best = 0;
  double total = 0.0;
  CMatrix best_shift;
  // One enumerator for alpha L; the shift only moves the ball center.
  ShiftedLattice base(L, alpha, CMatrix::Zero(s.rows, s.cols()), options.budget);
  for (int t = 0; t < trials; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    const CMatrix shift = random_shift(*L, alpha, rng);
    const RVector center = -realify(shift);
    std::size_t count = 0;
    base.enumerator().for_each_in_ball(center, radius2, [&](const IntVector& z, double) {
      if ((shift + alpha * L->point(z)).squaredNorm() <= radius2) ++count;
    });
    total += static_cast<double>(count);
    if (count > best) {
      best = count;
      best_shift = shift;
      C.best_trial = t;
    }
  }
  C.mean_count = total / trials;
  if (static_cast<double>(best) < target) {
    std::ostringstream os;
    os << "best shift holds " << best << " points, need " << target;
    throw CarveFailed(os.str(), best);
  }

  C.shift = best_shift;
  ShiftedLattice code(L, alpha, best_shift, options.budget);
  std::vector<std::pair<double, IntVector>> pts;
  code.for_each_in_ball(radius2, [&](const IntVector& z, double e) { pts.emplace_back(e, z); });
  C.points_in_ball = pts.size();
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return std::lexicographical_compare(a.second.data(), a.second.data() + a.second.size(), b.second.data(),
                                        b.second.data() + b.second.size());
  });
  const double cap = std::exp2(std::ceil(R * nk) + 2.0);
  if (options.truncate && static_cast<double>(pts.size()) > cap) {
    pts.resize(static_cast<std::size_t>(cap));
    C.truncated = true;
  }
  for (auto& [e, z] : pts) {
    C.codewords.push_back(code.point(z));
    C.coords.push_back(std::move(z));
  }
  return C;
}

void write_codebook(std::ostream& out, const Codebook& C) {
  MatrixFile f;
  f.shape = C.lattice->shape();
  std::ostringstream shift;
  for (Eigen::Index r = 0; r < C.shift.rows(); ++r) {
    for (Eigen::Index c = 0; c < C.shift.cols(); ++c) shift << (r || c ? " " : "") << format_complex(C.shift(r, c));
  }
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  f.header = {{"alpha", num(C.alpha)},
              {"shift", shift.str()},
              {"P", num(C.power)},
              {"R", num(C.rate_target)},
              {"realized_rate", num(C.realized_rate())},
              {"points_in_ball", std::to_string(C.points_in_ball)},
              {"truncated", C.truncated ? "true" : "false"}};
  f.matrices = C.codewords;
  write_matrix_file(out, f);
}

ImplicitCodebook::ImplicitCodebook(std::shared_ptr<const MatrixLattice> L, double P, double R,
                                   std::uint64_t shift_seed, std::uint64_t budget)
    : power_(P),
      rate_(R),
      radius2_(P * L->shape().n * L->shape().k),
      shifted_(L, scaling_alpha(P, R, L->shape().n, L->shape().k, L->volume()),
               [&] {
                 Rng rng(shift_seed, 0);
                 return random_shift(*L, scaling_alpha(P, R, L->shape().n, L->shape().k, L->volume()), rng);
               }(),
               budget) {}

IntVector ImplicitCodebook::sample(Rng& rng) const {
  // Uniform x in the ball enlarged by the covering radius, mapped to its
  // nearest lattice point. Each cell of a codeword lies inside the enlarged
  // ball, so accepted codewords are exactly uniform.
  const BlockShape& s = shifted_.lattice().shape();
  const int dim = s.real_dim();
  const double radius = std::sqrt(radius2_) + shifted_.enumerator().covering_radius_bound();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RVector g(dim);
    for (int i = 0; i < dim; ++i) g(i) = rng.normal();
    const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
    const RVector x = g * (r / g.norm());
    const ClosestPoint cp = shifted_.nearest(complexify(x, s.rows, s.cols()));
    if (shifted_.point(cp.coords).squaredNorm() <= radius2_) return cp.coords;
  }
  throw EmptyBall("could not draw a codeword inside the power ball");
}

}  // namespace mbl
