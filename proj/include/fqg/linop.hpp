#ifndef FQG_LINOP_HPP
#define FQG_LINOP_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqg {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;

/// Global tolerance for operator-norm equality assertions.
inline constexpr double kTol = 1e-9;
/// Relative singular-value cutoff for rank / null-space decisions.
inline constexpr double kRankCut = 1e-8;

struct ShapeMismatch : std::runtime_error {
  explicit ShapeMismatch(const std::string& msg) : std::runtime_error("ShapeMismatch: " + msg) {}
};

/// Labeled finite-dimensional Hilbert space. Only the dimension enters the
/// numerics; labels exist for reports.
struct HSpace {
  int dim = 0;
  std::vector<std::string> labels;
  static HSpace of_dim(int d) { return HSpace{d, {}}; }
};

Mat kron(const Mat& a, const Mat& b);
inline Mat adjoint(const Mat& a) { return a.adjoint(); }

/// Spectral norm (largest singular value).
double op_norm(const Mat& a);

/// Numerical rank with relative cutoff kRankCut * sigma_max.
int num_rank(const Mat& a);

bool is_projection(const Mat& a, double tol = kTol);
bool is_partial_isometry(const Mat& a, double tol = kTol);
bool is_unitary(const Mat& a, double tol = kTol);

/// Tensor swap on C^n (x) C^m: sigma(xi (x) eta) = eta (x) xi.
Mat swap_op(int n, int m);

/// Leg embeddings of an operator on H (x) H into H (x) H (x) H, all factors
/// of dimension n. leg13 is built by index contraction, not by conjugating
/// with swaps.
Mat leg12(const Mat& a, int n);
Mat leg23(const Mat& a, int n);
Mat leg13(const Mat& a, int n);

/// Rank-one linear form omega_{xi,eta}(T) = <T xi, eta>.
struct LinearForm {
  Vec xi, eta;
  Complex eval(const Mat& t) const { return (eta.adjoint() * t * xi)(0); }
};

/// (i (x) omega)(X) for X on C^na (x) C^nb: the operator M on C^na with
/// <M v, w> = <X (v (x) xi), w (x) eta>.
Mat slice_right(const Mat& x, int na, int nb, const LinearForm& omega);
/// (omega (x) i)(X): the operator N on C^nb with <N v, w> = <X (xi (x) v), eta (x) w>.
Mat slice_left(const Mat& x, int na, int nb, const LinearForm& omega);

/// Basis vector e_p of C^n.
Vec basis_vec(int n, int p);

}  // namespace fqg

#endif
