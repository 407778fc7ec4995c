#include "fqg/staralg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <stdexcept>

namespace fqg {

Vec vec_op(const Mat& a) { return Eigen::Map<const Vec>(a.data(), a.size()); }

Mat unvec_op(const Vec& v, int n) { return Eigen::Map<const Mat>(v.data(), n, n); }

Mat StarSubspace::basis_matrix() const {
  Mat b(ambient * ambient, dim());
  for (int i = 0; i < dim(); ++i) b.col(i) = vec_op(basis[i]);
  return b;
}

Vec StarSubspace::coords(const Mat& a) const {
  Vec c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = (vec_op(basis[i]).adjoint() * vec_op(a))(0);
  return c;
}

double StarSubspace::residual_of(const Mat& a) const {
  Mat proj = from_coords(coords(a));
  return (a - proj).norm();
}

Mat StarSubspace::from_coords(const Vec& c) const {
  Mat out = Mat::Zero(ambient, ambient);
  for (int i = 0; i < dim(); ++i) out += c(i) * basis[i];
  return out;
}

namespace {

/// Orthonormal basis of the column span, via SVD with relative cutoff.
std::vector<Vec> col_span(const Mat& cols) {
  std::vector<Vec> out;
  if (cols.cols() == 0 || cols.norm() == 0.0) return out;
  // Rank-revealing QR instead of BDCSVD (broken for sparse input in 3.4.0);
  // with column pivoting the first rank() columns of Q span the column space.
  Eigen::ColPivHouseholderQR<Mat> qr(cols);
  qr.setThreshold(kRankCut);
  const Eigen::Index r = qr.rank();
  const Mat q = qr.householderQ() * Mat::Identity(cols.rows(), r);
  for (Eigen::Index i = 0; i < r; ++i) out.push_back(q.col(i));
  return out;
}

/// Orthonormal basis of the null space of m (n columns).
std::vector<Vec> null_space(const Mat& m) {
  std::vector<Vec> out;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (smax == 0.0 || s <= kRankCut * smax) out.push_back(svd.matrixV().col(i));
  }
  return out;
}

void verify_flags(StarSubspace& s) {
  s.closed_under_product = true;
  s.closed_under_adjoint = true;
  for (const Mat& a : s.basis) {
    if (s.residual_of(a.adjoint()) >= kTol) s.closed_under_adjoint = false;
    for (const Mat& b : s.basis)
      if (s.residual_of(a * b) >= kTol) {
        s.closed_under_product = false;
        break;
      }
  }
}

}  // namespace

StarSubspace span_of(const std::vector<Mat>& ops, int ambient) {
  StarSubspace s;
  s.ambient = ambient;
  Mat cols(ambient * ambient, static_cast<Eigen::Index>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i) cols.col(static_cast<Eigen::Index>(i)) = vec_op(ops[i]);
  for (const Vec& v : col_span(cols)) s.basis.push_back(unvec_op(v, ambient));
  verify_flags(s);
  return s;
}

StarSubspace generated_algebra(const std::vector<Mat>& gens, int ambient, bool unital) {
  std::vector<Mat> seed = gens;
  if (unital) seed.push_back(Mat::Identity(ambient, ambient));
  for (const Mat& g : gens) seed.push_back(g.adjoint());
  StarSubspace s = span_of(seed, ambient);
  const int cap = ambient * ambient;
  for (int iter = 0;; ++iter) {
    if (iter > 64) throw std::logic_error("generated_algebra failed to stabilize");
    std::vector<Mat> grown = s.basis;
    for (const Mat& a : s.basis) {
      grown.push_back(a.adjoint());
      for (const Mat& b : s.basis) grown.push_back(a * b);
    }
    StarSubspace next = span_of(grown, ambient);
    if (next.dim() == s.dim()) {
      s = next;
      break;
    }
    s = next;
    if (s.dim() > cap) throw std::logic_error("generated_algebra exceeded ambient dimension");
  }
  verify_flags(s);
  return s;
}

StarSubspace commutant(const std::vector<Mat>& gens, int ambient) {
  const int n2 = ambient * ambient;
  if (gens.empty()) {
    std::vector<Mat> all;
    for (int i = 0; i < ambient; ++i)
      for (int j = 0; j < ambient; ++j) {
        Mat e = Mat::Zero(ambient, ambient);
        e(i, j) = 1.0;
        all.push_back(e);
      }
    return span_of(all, ambient);
  }
  // vec([X, g]) = (g^T (x) 1 - 1 (x) g) vec(X) in column-major vectorization
  Mat big(static_cast<Eigen::Index>(gens.size()) * n2, n2);
  const Mat id = Mat::Identity(ambient, ambient);
  for (size_t i = 0; i < gens.size(); ++i)
    big.middleRows(static_cast<Eigen::Index>(i) * n2, n2) =
        kron(gens[i].transpose(), id) - kron(id, gens[i]);
  std::vector<Mat> ops;
  for (const Vec& v : null_space(big)) ops.push_back(unvec_op(v, ambient));
  StarSubspace s = span_of(ops, ambient);
  verify_flags(s);
  return s;
}

double subspace_residual(const StarSubspace& a, const StarSubspace& b) {
  double r = 0.0;
  for (const Mat& x : a.basis) r = std::max(r, b.residual_of(x));
  for (const Mat& x : b.basis) r = std::max(r, a.residual_of(x));
  return r;
}

bool subspace_equal(const StarSubspace& a, const StarSubspace& b, double tol) {
  return a.ambient == b.ambient && subspace_residual(a, b) < tol;
}

StarSubspace intersect(const StarSubspace& a, const StarSubspace& b) {
  if (a.ambient != b.ambient) throw ShapeMismatch("intersect: ambient mismatch");
  const int n2 = a.ambient * a.ambient;
  const Mat pa = a.basis_matrix() * a.basis_matrix().adjoint();
  const Mat pb = b.basis_matrix() * b.basis_matrix().adjoint();
  Mat big(2 * n2, n2);
  big.topRows(n2) = Mat::Identity(n2, n2) - pa;
  big.bottomRows(n2) = Mat::Identity(n2, n2) - pb;
  std::vector<Mat> ops;
  for (const Vec& v : null_space(big)) ops.push_back(unvec_op(v, a.ambient));
  StarSubspace s = span_of(ops, a.ambient);
  verify_flags(s);
  return s;
}

StarSubspace center(const StarSubspace& a) { return intersect(a, commutant(a.basis, a.ambient)); }

Mat BaseRep::apply(const Vec& f) const {
  Mat out = Mat::Zero(ambient(), ambient());
  for (size_t i = 0; i < proj.size(); ++i) out += f(static_cast<Eigen::Index>(i)) * proj[i];
  return out;
}

BaseRep base_rep_from_labels(const Groupoid& g, const std::vector<int>& label) {
  BaseRep rep;
  for (int u : g.units) {
    Mat p = Mat::Zero(g.n, g.n);
    for (int x = 0; x < g.n; ++x)
      if (label[x] == u) p(x, x) = 1.0;
    rep.proj.push_back(std::move(p));
  }
  return rep;
}

Mat e_proj(const BaseRep& s_rep, const BaseRep& r_rep) {
  if (s_rep.proj.size() != r_rep.proj.size())
    throw ShapeMismatch("e_proj: base size mismatch");
  const int n = s_rep.ambient(), m = r_rep.ambient();
  Mat e = Mat::Zero(n * m, n * m);
  for (size_t i = 0; i < s_rep.proj.size(); ++i) e += kron(s_rep.proj[i], r_rep.proj[i]);
  return e;
}

Mat e_proj_partial_trace(const BaseRep& s_rep, const BaseRep& r_rep) {
  const int n = s_rep.ambient();
  Mat out = Mat::Zero(n, n);
  for (size_t i = 0; i < s_rep.proj.size(); ++i) out += s_rep.proj[i] * r_rep.proj[i].trace();
  return out;
}

}  // namespace fqg
