#include "fqg/linop.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace fqg {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// BDCSVD in Eigen 3.4.0 misdecomposes some sparse matrices (wrong small
// singular values and a U column outside the column space), so every
// rank/norm decision goes through the Gram matrix or a rank-revealing QR.
double op_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  const Mat gram = a.rows() <= a.cols() ? Mat(a * a.adjoint()) : Mat(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

int num_rank(const Mat& a) {
  if (a.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(a);
  qr.setThreshold(kRankCut);
  return static_cast<int>(qr.rank());
}

bool is_projection(const Mat& a, double tol) {
  return a.rows() == a.cols() && op_norm(a * a - a) < tol && op_norm(a - a.adjoint()) < tol;
}

bool is_partial_isometry(const Mat& a, double tol) {
  return op_norm(a * a.adjoint() * a - a) < tol;
}

bool is_unitary(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const Mat id = Mat::Identity(a.rows(), a.cols());
  return op_norm(a.adjoint() * a - id) < tol && op_norm(a * a.adjoint() - id) < tol;
}

Mat swap_op(int n, int m) {
  Mat s = Mat::Zero(n * m, n * m);
  // output index ordering (j, i) on C^m (x) C^n when n != m would change
  // dimensions; the swap is only used with n == m here.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) s(j * n + i, i * m + j) = 1.0;
  return s;
}

Mat leg12(const Mat& a, int n) { return kron(a, Mat::Identity(n, n)); }

Mat leg23(const Mat& a, int n) { return kron(Mat::Identity(n, n), a); }

Mat leg13(const Mat& a, int n) {
  Mat out = Mat::Zero(n * n * n, n * n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int ip = 0; ip < n; ++ip)
        for (int kp = 0; kp < n; ++kp) {
          const Complex v = a(i * n + k, ip * n + kp);
          if (v == Complex(0.0)) continue;
          for (int j = 0; j < n; ++j) out((i * n + j) * n + k, (ip * n + j) * n + kp) = v;
        }
  return out;
}

Mat slice_right(const Mat& x, int na, int nb, const LinearForm& omega) {
  if (x.rows() != na * nb || x.cols() != na * nb)
    throw ShapeMismatch("slice_right: operator is not on the declared tensor factorization");
  Mat m = Mat::Zero(na, na);
  for (int i = 0; i < na; ++i)
    for (int ip = 0; ip < na; ++ip) {
      Complex v = 0.0;
      for (int j = 0; j < nb; ++j)
        for (int jp = 0; jp < nb; ++jp)
          v += std::conj(omega.eta(j)) * x(i * nb + j, ip * nb + jp) * omega.xi(jp);
      m(i, ip) = v;
    }
  return m;
}

Mat slice_left(const Mat& x, int na, int nb, const LinearForm& omega) {
  if (x.rows() != na * nb || x.cols() != na * nb)
    throw ShapeMismatch("slice_left: operator is not on the declared tensor factorization");
  Mat m = Mat::Zero(nb, nb);
  for (int j = 0; j < nb; ++j)
    for (int jp = 0; jp < nb; ++jp) {
      Complex v = 0.0;
      for (int i = 0; i < na; ++i)
        for (int ip = 0; ip < na; ++ip)
          v += std::conj(omega.eta(i)) * x(i * nb + j, ip * nb + jp) * omega.xi(ip);
      m(j, jp) = v;
    }
  return m;
}

Vec basis_vec(int n, int p) {
  Vec v = Vec::Zero(n);
  v(p) = 1.0;
  return v;
}

}  // namespace fqg
