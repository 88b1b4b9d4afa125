#include "kt/numerics/floatla.hpp"

#include <Eigen/SVD>

namespace kt {

Eigen::MatrixXd to_eigen(const QMat& m) {
  Eigen::MatrixXd out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::MatrixXd to_eigen(const SpMat& m) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows, m.cols);
  for (int j = 0; j < m.cols; ++j)
    for (int p = m.ptr[j]; p < m.ptr[j + 1]; ++p) out(m.idx[p], j) = m.val[p].get_d();
  return out;
}

static int count_above(const Eigen::VectorXd& s, double tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++r;
  return r;
}

int rank_float(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return count_above(svd.singularValues(), tol);
}

Eigen::MatrixXd kernel_float(const Eigen::MatrixXd& a, double tol) {
  const int n = int(a.cols());
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  int r = count_above(svd.singularValues(), tol);
  return svd.matrixV().rightCols(n - r);
}

}  // namespace kt
