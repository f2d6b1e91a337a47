#pragma once

#include <Eigen/Dense>

namespace bwave {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
  int sweeps = 0;
};

/// Cyclic Jacobi rotations on a dense symmetric matrix. Sweeps run in the
/// fixed row-major (p < q) order until the off-diagonal Frobenius norm drops
/// below off_tolerance times the Frobenius norm of the input.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd a, double off_tolerance = 1e-13, int max_sweeps = 100);

}  // namespace bwave
