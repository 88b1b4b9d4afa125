#pragma once

#include "kt/numerics/matrix.hpp"

#include <Eigen/Dense>

namespace kt {

Eigen::MatrixXd to_eigen(const QMat& m);
Eigen::MatrixXd to_eigen(const SpMat& m);

// Numerical rank: singular values above tol * sigma_max.
int rank_float(const Eigen::MatrixXd& a, double tol = 1e-9);

// Orthonormal kernel basis as columns (right singular vectors below tol * sigma_max).
Eigen::MatrixXd kernel_float(const Eigen::MatrixXd& a, double tol = 1e-9);

}  // namespace kt
