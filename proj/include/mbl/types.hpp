#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace mbl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// A multiblock matrix (X_1, ..., X_k) is one rows x (n*k) matrix; block i
// occupies columns [i*n, (i+1)*n).
struct BlockShape {
  int rows = 1;
  int n = 1;
  int k = 1;

  int cols() const { return n * k; }
  int real_dim() const { return 2 * rows * n * k; }
  bool operator==(const BlockShape&) const = default;
};

}  // namespace mbl
