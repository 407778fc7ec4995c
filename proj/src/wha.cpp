#include "fqg/wha.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>

namespace fqg {

namespace {

Mat stacked(const std::vector<Mat>& ops) {
  if (ops.empty()) return Mat(0, 0);
  Mat b(ops[0].size(), static_cast<Eigen::Index>(ops.size()));
  for (size_t i = 0; i < ops.size(); ++i) b.col(static_cast<Eigen::Index>(i)) = vec_op(ops[i]);
  return b;
}

Vec lstsq(const Mat& a, const Vec& b) {
  return a.completeOrthogonalDecomposition().solve(b);
}

/// Basis of kron(a_i, a_j) for coordinates of tensor-square elements.
Mat tensor_stacked(const std::vector<Mat>& ops) {
  const int d = static_cast<int>(ops.size());
  Mat b(ops[0].size() * ops[0].size(), static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) b.col(i * d + j) = vec_op(kron(ops[i], ops[j]));
  return b;
}

/// Hermitian square root with eigenvalues clamped at zero.
Mat psd_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(((a + a.adjoint()) / 2.0).eval());
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

/// Inverse of a hermitian positive matrix; small eigenvalues are pseudo-inverted.
Mat psd_inv(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(((a + a.adjoint()) / 2.0).eval());
  const double cut = kRankCut * std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::abs(ev(i)) > cut ? 1.0 / ev(i) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Vec WeakHopf::coords(const Mat& x) const { return lstsq(stacked(basis), vec_op(x)); }

double WeakHopf::span_residual(const Mat& x) const {
  return (vec_op(x) - stacked(basis) * coords(x)).norm();
}

Mat WeakHopf::op(const Vec& c) const {
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < dim(); ++i) out += c(i) * basis[i];
  return out;
}

Mat WeakHopf::coprod_op(const Mat& x) const {
  const int d = dim();
  const Vec g = coproduct * coords(x);
  Mat out = Mat::Zero(n * n, n * n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(g(i * d + j)) > 1e-14) out += g(i * d + j) * kron(basis[i], basis[j]);
  return out;
}

Mat WeakHopf::antipode_op(const Mat& x) const { return op(antipode * coords(x)); }

Complex WeakHopf::counit_of(const Mat& x) const { return (counit * coords(x))(0); }

Complex WeakHopf::haar_of(const Mat& x) const { return (haar * coords(x))(0); }

WeakHopf extract_wha(const Mpi& I, Side side, double tol) {
  const RegularityResult reg = is_regular(I);
  if (!reg.regular) throw WhaError("NotRegular", "regularity residual " + std::to_string(reg.residual));

  auto [s, shat] = leg_algebras(I);
  WeakHopf w;
  w.n = I.n;
  w.basis = side == Side::left ? s.basis : shat.basis;
  const int d = w.dim();
  const Mat bmat = stacked(w.basis);
  const auto bsolve = bmat.completeOrthogonalDecomposition();

  // unit of the algebra: least-squares solve of u a_i = a_i u = a_i
  {
    Mat sys(2 * d * I.n * I.n, d);
    Vec rhs(2 * d * I.n * I.n);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) {
        sys.block(2 * i * I.n * I.n, k, I.n * I.n, 1) = vec_op(w.basis[k] * w.basis[i]);
        sys.block((2 * i + 1) * I.n * I.n, k, I.n * I.n, 1) = vec_op(w.basis[i] * w.basis[k]);
      }
    for (int i = 0; i < d; ++i) {
      rhs.segment(2 * i * I.n * I.n, I.n * I.n) = vec_op(w.basis[i]);
      rhs.segment((2 * i + 1) * I.n * I.n, I.n * I.n) = vec_op(w.basis[i]);
    }
    w.unit_op = w.op(lstsq(sys, rhs));
  }

  // coproduct on the basis, coordinates in the tensor basis
  const Mat tmat = tensor_stacked(w.basis);
  const auto tsolve = tmat.completeOrthogonalDecomposition();
  w.coproduct = Mat(d * d, d);
  double defect = 0.0;
  for (int k = 0; k < d; ++k) {
    const Mat g = side == Side::left
                      ? Mat(I.matrix * kron(w.basis[k], Mat::Identity(I.n, I.n)) * I.matrix.adjoint())
                      : Mat(I.matrix.adjoint() * kron(Mat::Identity(I.n, I.n), w.basis[k]) * I.matrix);
    const Vec c = tsolve.solve(vec_op(g));
    defect = std::max(defect, (vec_op(g) - tmat * c).norm());
    w.coproduct.col(k) = c;
  }
  if (defect >= tol)
    throw WhaError("InconsistentSlices", "coproduct defect " + std::to_string(defect));

  // antipode and counit from their values on the spanning slices
  Mat sc(d, I.n * I.n), tc(d, I.n * I.n);
  RowVec ov(I.n * I.n);
  const Mat istar = I.matrix.adjoint();
  int col = 0;
  for (int p = 0; p < I.n; ++p)
    for (int q = 0; q < I.n; ++q, ++col) {
      const LinearForm omega{basis_vec(I.n, p), basis_vec(I.n, q)};
      const Mat sl = side == Side::left ? slice_left(I.matrix, I.n, I.n, omega)
                                        : slice_right(I.matrix, I.n, I.n, omega);
      const Mat slstar = side == Side::left ? slice_left(istar, I.n, I.n, omega)
                                            : slice_right(istar, I.n, I.n, omega);
      sc.col(col) = bsolve.solve(vec_op(sl));
      tc.col(col) = bsolve.solve(vec_op(slstar));
      ov(col) = p == q ? 1.0 : 0.0;  // omega_{chi_p, chi_q}(1)
    }
  // K sc = tc  and  eps sc = ov, both least squares over the slice family
  const auto scsolve = Mat(sc.transpose()).completeOrthogonalDecomposition();
  w.antipode = scsolve.solve(Mat(tc.transpose())).transpose();
  w.counit = scsolve.solve(Vec(ov.transpose())).transpose();
  const double kdef = (w.antipode * sc - tc).norm();
  const double edef = (w.counit * sc - ov).norm();
  if (kdef >= tol || edef >= tol)
    throw WhaError("InconsistentSlices",
                   "antipode defect " + std::to_string(kdef) + ", counit defect " + std::to_string(edef));
  return w;
}

Report verify_weak_hopf(const WeakHopf& w) {
  Report rep;
  const int d = w.dim();
  const int n = w.n;
  const Mat id_d = Mat::Identity(d, d);
  const Mat& G = w.coproduct;
  const Mat& K = w.antipode;
  std::vector<Mat> kb(d);  // kappa(a_k)
  for (int k = 0; k < d; ++k) kb[k] = w.op(K.col(k));

  double closure = w.span_residual(w.unit_op);
  double star_cl = 0.0, unit_law = 0.0;
  for (int i = 0; i < d; ++i) {
    star_cl = std::max(star_cl, w.span_residual(w.basis[i].adjoint()));
    unit_law = std::max({unit_law, op_norm(w.unit_op * w.basis[i] - w.basis[i]),
                         op_norm(w.basis[i] * w.unit_op - w.basis[i])});
    for (int j = 0; j < d; ++j)
      closure = std::max(closure, w.span_residual(w.basis[i] * w.basis[j]));
  }
  rep.add("algebra_closure", closure);
  rep.add("algebra_star_closure", star_cl);
  rep.add("algebra_unit", unit_law);

  rep.add("coassociativity", op_norm(kron(G, id_d) * G - kron(id_d, G) * G));

  double mult = 0.0, star = 0.0;
  for (int i = 0; i < d; ++i) {
    star = std::max(star, op_norm(w.coprod_op(w.basis[i].adjoint()) -
                                  Mat(w.coprod_op(w.basis[i]).adjoint())));
    for (int j = 0; j < d; ++j)
      mult = std::max(mult, op_norm(w.coprod_op(w.basis[i] * w.basis[j]) -
                                    w.coprod_op(w.basis[i]) * w.coprod_op(w.basis[j])));
  }
  rep.add("coproduct_multiplicative", mult);
  rep.add("coproduct_star", star);

  // antipode: (kappa o *)^2 = i, anti-multiplicativity, flip compatibility
  double inv = 0.0, anti = 0.0, flip = 0.0;
  const Mat sw = swap_op(n, n);
  for (int i = 0; i < d; ++i) {
    inv = std::max(inv, op_norm(w.antipode_op(Mat(w.antipode_op(w.basis[i].adjoint()).adjoint())) -
                                w.basis[i]));
    for (int j = 0; j < d; ++j)
      anti = std::max(anti, op_norm(w.antipode_op(w.basis[i] * w.basis[j]) - kb[j] * kb[i]));
    Mat lhs = Mat::Zero(n * n, n * n);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (std::abs(G(a * d + b, i)) > 1e-14) lhs += G(a * d + b, i) * kron(kb[a], kb[b]);
    flip = std::max(flip, op_norm(lhs - sw * w.coprod_op(kb[i]) * sw));
  }
  rep.add("antipode_star_involutive", inv);
  rep.add("antipode_antimultiplicative", anti);
  rep.add("antipode_flip_coproduct", flip);

  // (m(kappa (x) i) (x) i)(Gamma (x) i)Gamma(x) = (1 (x) x)Gamma(1)
  const Mat gamma1 = w.coprod_op(w.unit_op);
  double weak = 0.0;
  for (int k = 0; k < d; ++k) {
    const Vec t = kron(G, id_d) * G.col(k);
    Mat lhs = Mat::Zero(n * n, n * n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          const Complex c = t((i * d + j) * d + l);
          if (std::abs(c) > 1e-14) lhs += c * kron(kb[i] * w.basis[j], w.basis[l]);
        }
    weak = std::max(weak, op_norm(lhs - kron(w.unit_op, w.basis[k]) * gamma1));
  }
  rep.add("weak_comultiplicativity", weak);

  // counit laws
  double cl = 0.0, cr = 0.0;
  for (int k = 0; k < d; ++k) {
    Mat left = Mat::Zero(n, n), right = Mat::Zero(n, n);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        left += G(i * d + j, k) * w.counit(i) * w.basis[j];
        right += G(i * d + j, k) * w.counit(j) * w.basis[i];
      }
    cl = std::max(cl, op_norm(left - w.basis[k]));
    cr = std::max(cr, op_norm(right - w.basis[k]));
  }
  rep.add("counit_left", cl);
  rep.add("counit_right", cr);

  // (eps (x) eps)((x (x) 1)Gamma(1)(1 (x) y)) = eps(xy)
  const Vec g1 = w.coproduct * w.coords(w.unit_op);
  double weps = 0.0;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      Complex lhs = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (std::abs(g1(i * d + j)) > 1e-14)
            lhs += g1(i * d + j) * w.counit_of(w.basis[p] * w.basis[i]) *
                   w.counit_of(w.basis[j] * w.basis[q]);
      weps = std::max(weps, std::abs(lhs - w.counit_of(w.basis[p] * w.basis[q])));
    }
  rep.add("counit_weak_multiplicative", weps);

  // positivity of eps: the form matrix [eps(a_i* a_j)] is hermitian PSD
  Mat pe(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) pe(i, j) = w.counit_of(w.basis[i].adjoint() * w.basis[j]);
  const double herm = (pe - pe.adjoint()).norm();
  Eigen::SelfAdjointEigenSolver<Mat> es(((pe + pe.adjoint()) / 2.0).eval());
  rep.add("counit_positive", herm + std::max(0.0, -es.eigenvalues().minCoeff()));

  rep.sort();
  return rep;
}

CartanResult cartan(const WeakHopf& w) {
  const int d = w.dim();
  const int n4 = w.n * w.n * w.n * w.n;
  const Mat gamma1 = w.coprod_op(w.unit_op);
  Mat sys_t(2 * n4, d), sys_s(2 * n4, d);
  for (int k = 0; k < d; ++k) {
    const Mat gk = w.coprod_op(w.basis[k]);
    const Mat xt = kron(w.basis[k], w.unit_op);
    const Mat xs = kron(w.unit_op, w.basis[k]);
    sys_t.block(0, k, n4, 1) = vec_op(gk - gamma1 * xt);
    sys_t.block(n4, k, n4, 1) = vec_op(gk - xt * gamma1);
    sys_s.block(0, k, n4, 1) = vec_op(gk - gamma1 * xs);
    sys_s.block(n4, k, n4, 1) = vec_op(gk - xs * gamma1);
  }
  auto solve_members = [&](const Mat& sys) {
    std::vector<Mat> ops;
    Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sys.cols(); ++i) {
      const double s = i < sv.size() ? sv(i) : 0.0;
      if (smax == 0.0 || s <= kRankCut * smax) ops.push_back(w.op(svd.matrixV().col(i)));
    }
    return span_of(ops, w.n);
  };
  CartanResult res;
  res.target = solve_members(sys_t);
  res.source = solve_members(sys_s);

  double comm = 0.0;
  for (const Mat& t : res.target.basis)
    for (const Mat& s : res.source.basis) comm = std::max(comm, op_norm(t * s - s * t));
  res.report.add("cartan_commute", comm);

  std::vector<Mat> kt;
  for (const Mat& t : res.target.basis) kt.push_back(w.antipode_op(t));
  res.report.add("kappa_At_eq_As", subspace_residual(span_of(kt, w.n), res.source));
  res.report.sort();
  return res;
}

RowVec haar_solve(const WeakHopf& w, double tol) {
  const int d = w.dim();
  const Mat& G = w.coproduct;
  const Mat& K = w.antipode;
  std::vector<std::vector<Vec>> P(d, std::vector<Vec>(d));  // coords(a_i a_j)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) P[i][j] = w.coords(w.basis[i] * w.basis[j]);
  const Vec g1 = G * w.coords(w.unit_op);
  const Vec uc = w.coords(w.unit_op);

  const int rows = d + d + d * d * d;
  Mat sys = Mat::Zero(rows, d);
  Vec rhs = Vec::Zero(rows);
  // phi o kappa = phi
  sys.block(0, 0, d, d) = K.transpose() - Mat::Identity(d, d);
  // (i (x) phi)(Gamma(1)) = 1
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) sys(d + i, j) = g1(i * d + j);
    rhs(d + i) = uc(i);
  }
  // strong invariance: (i (x) phi)((1 (x) a_q)Gamma(a_p)) =
  //                    kappa((i (x) phi)(Gamma(a_q)(1 (x) a_p)))
  int row = 2 * d;
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q, row += d) {
      Mat lhs = Mat::Zero(d, d);  // component i, unknown index
      Mat rmat = Mat::Zero(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (std::abs(G(i * d + j, p)) > 1e-14) lhs.row(i) += G(i * d + j, p) * P[q][j].transpose();
          if (std::abs(G(i * d + j, q)) > 1e-14) rmat.row(i) += G(i * d + j, q) * P[j][p].transpose();
        }
      sys.block(row, 0, d, d) = lhs - K * rmat;
    }

  const auto qr = sys.completeOrthogonalDecomposition();
  if (qr.rank() < d) throw WhaError("NonUnique", "haar system rank " + std::to_string(qr.rank()));
  const Vec f = qr.solve(rhs);
  const double res = (sys * f - rhs).norm();
  if (res >= tol) throw WhaError("NoSolution", "haar residual " + std::to_string(res));

  // positivity and faithfulness: [phi(a_i* a_j)] positive definite
  Mat h(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) h(i, j) = f.transpose() * w.coords(w.basis[i].adjoint() * w.basis[j]);
  if ((h - h.adjoint()).norm() >= tol)
    throw WhaError("NotPositive", "haar form matrix not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(((h + h.adjoint()) / 2.0).eval());
  if (es.eigenvalues().minCoeff() <= kRankCut * es.eigenvalues().maxCoeff())
    throw WhaError("NotPositive", "haar form not faithful positive");
  return f.transpose();
}

HaarDerived haar_derived(const WeakHopf& w, const RowVec& phi) {
  const int d = w.dim();
  const Mat& G = w.coproduct;
  HaarDerived out;
  out.es_map = Mat::Zero(d, d);
  out.et_map = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        out.es_map(j, k) += phi(i) * G(i * d + j, k);
        out.et_map(i, k) += phi(j) * G(i * d + j, k);
      }

  Report& rep = out.report;
  rep.add("Es_idempotent", op_norm(out.es_map * out.es_map - out.es_map));
  rep.add("Et_idempotent", op_norm(out.et_map * out.et_map - out.et_map));

  const CartanResult c = cartan(w);
  double rs = 0.0, rt = 0.0, ps = 0.0, pt = 0.0, fs = 0.0, ft = 0.0;
  for (int k = 0; k < d; ++k) {
    rs = std::max(rs, c.source.residual_of(w.op(out.es_map.col(k))));
    rt = std::max(rt, c.target.residual_of(w.op(out.et_map.col(k))));
    fs = std::max(fs, std::abs((phi * (out.es_map * basis_vec(d, k).eval()))(0) - phi(k)));
    ft = std::max(ft, std::abs((phi * (out.et_map * basis_vec(d, k).eval()))(0) - phi(k)));
    const Vec sq = w.coords(w.basis[k].adjoint() * w.basis[k]);
    auto neg_part = [&](const Mat& e) {
      const Mat m = w.op(e * sq);
      Eigen::SelfAdjointEigenSolver<Mat> es(((m + m.adjoint()) / 2.0).eval());
      return (m - m.adjoint()).norm() + std::max(0.0, -es.eigenvalues().minCoeff());
    };
    ps = std::max(ps, neg_part(out.es_map));
    pt = std::max(pt, neg_part(out.et_map));
  }
  rep.add("Es_range_in_As", rs);
  rep.add("Et_range_in_At", rt);
  rep.add("phi_invariant_under_Es", fs);
  rep.add("phi_invariant_under_Et", ft);
  rep.add("Es_positive_on_squares", ps);
  rep.add("Et_positive_on_squares", pt);

  out.g_s = psd_sqrt(w.op(out.es_map * w.coords(w.unit_op)));
  out.g_t = w.antipode_op(out.g_s);
  rep.add("gt_eq_kappa_gs", op_norm(out.g_t - psd_sqrt(w.op(out.et_map * w.coords(w.unit_op)))));

  const Mat gsi = psd_inv(out.g_s);
  const Mat gti = psd_inv(out.g_t);
  double ksq = 0.0;
  for (int k = 0; k < d; ++k)
    ksq = std::max(ksq, op_norm(w.antipode_op(w.antipode_op(w.basis[k])) -
                                out.g_t * gsi * w.basis[k] * gti * out.g_s));
  rep.add("diag_kappa_squared_modular", ksq);
  rep.sort();
  return out;
}

PairingResult pairing(const Mpi& I, double tol) {
  auto [s, shat] = leg_algebras(I);
  const int d = s.dim(), dh = shat.dim();
  if (d != dh)
    throw WhaError("Degenerate", "leg algebra dimensions differ: " + std::to_string(d) + " vs " +
                                     std::to_string(dh));
  const int n = I.n;
  Mat sys(n * n * n * n, d * dh);
  Vec rhs(n * n * n * n);
  int row = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Vec c = s.coords(slice_left(I.matrix, n, n, {basis_vec(n, p), basis_vec(n, q)}));
      for (int pp = 0; pp < n; ++pp)
        for (int qq = 0; qq < n; ++qq, ++row) {
          const Vec ch =
              shat.coords(slice_right(I.matrix, n, n, {basis_vec(n, pp), basis_vec(n, qq)}));
          sys.row(row) = kron(ch, c).transpose();
          rhs(row) = I.matrix(q * n + qq, p * n + pp);
        }
    }
  PairingResult out;
  const Vec pv = lstsq(sys, rhs);
  out.defect = (sys * pv - rhs).norm();
  out.p = Eigen::Map<const Mat>(pv.data(), d, dh);
  out.rank = num_rank(out.p);
  if (out.defect >= tol)
    throw WhaError("Degenerate", "pairing not well defined, defect " + std::to_string(out.defect));
  if (out.rank < d) throw WhaError("Degenerate", "pairing rank " + std::to_string(out.rank));
  return out;
}

std::vector<Mat> minimal_projections(const StarSubspace& a) {
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> unif(0.25, 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat h = Mat::Zero(a.ambient, a.ambient);
    for (const Mat& b : a.basis) {
      h += unif(rng) * (b + b.adjoint());
      h += unif(rng) * Complex(0, 1) * (b - b.adjoint());
    }
    if (a.residual_of(h) >= kTol) continue;  // algebra not *-closed enough for this sample
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    std::vector<Mat> projs;
    bool ok = true;
    int i = ev.size() - 1;
    while (i >= 0) {  // walk clusters from the top eigenvalue down
      int j = i;
      while (j - 1 >= 0 && std::abs(ev(j - 1) - ev(i)) < 1e-7 * scale) --j;
      Mat p = Mat::Zero(a.ambient, a.ambient);
      for (int k = j; k <= i; ++k)
        p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      if (a.residual_of(p) >= 1e-7) ok = false;
      projs.push_back(p);
      i = j - 1;
    }
    if (ok && static_cast<int>(projs.size()) == a.dim()) return projs;
  }
  throw std::logic_error("minimal_projections: no generic spectral decomposition found");
}

Mpi gns_mpi(const WeakHopf& w, double tol) {
  if (!w.has_haar()) throw WhaError("NotFaithful", "no Haar measure attached");
  const int d = w.dim();
  Mat gm(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gm(i, j) = w.haar_of(w.basis[i].adjoint() * w.basis[j]);
  Eigen::SelfAdjointEigenSolver<Mat> es(((gm + gm.adjoint()) / 2.0).eval());
  if ((gm - gm.adjoint()).norm() >= tol ||
      es.eigenvalues().minCoeff() <= kRankCut * es.eigenvalues().maxCoeff())
    throw WhaError("NotFaithful", "GNS inner product degenerate");
  const Mat f = psd_sqrt(gm);
  const Mat finv = psd_inv(f);

  const CartanResult c = cartan(w);
  for (const StarSubspace* sub : {&c.target, &c.source})
    for (const Mat& x : sub->basis)
      if (op_norm(w.antipode_op(w.antipode_op(x)) - x) >= tol)
        throw WhaError("AntipodeNotInvolutiveOnCartan", "kappa^2 != id on a Cartan subalgebra");

  // T(x (x) y) = Gamma(x)(1 (x) y) in basis coordinates
  const Mat& G = w.coproduct;
  std::vector<std::vector<Vec>> P(d, std::vector<Vec>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) P[i][j] = w.coords(w.basis[i] * w.basis[j]);
  Mat t = Mat::Zero(d * d, d * d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          if (std::abs(G(i * d + j, p)) < 1e-14) continue;
          t.block(i * d, p * d + q, d, 1) += G(i * d + j, p) * P[j][q];
        }

  auto lmult = [&](const Mat& a) {
    Mat m(d, d);
    for (int k = 0; k < d; ++k) m.col(k) = w.coords(a * w.basis[k]);
    return Mat(f * m * finv);
  };
  auto rmult = [&](const Mat& a) {
    Mat m(d, d);
    for (int k = 0; k < d; ++k) m.col(k) = w.coords(w.basis[k] * a);
    return Mat(f * m * finv);
  };

  Mpi out;
  out.n = d;
  out.provenance = "gns";
  const Mat ff = kron(f, f);
  out.matrix = ff * t * kron(finv, finv);
  for (const Mat& pu : minimal_projections(c.target)) {
    out.beta.proj.push_back(lmult(pu));
    out.beta_hat.proj.push_back(lmult(w.antipode_op(pu)));
    out.alpha.proj.push_back(rmult(w.antipode_op(pu)));
  }
  return out;
}

Mat rho_op(const Groupoid& g, int x) {
  Mat m = Mat::Zero(g.n, g.n);
  for (int t = 0; t < g.n; ++t)
    if (g.src[t] == g.tgt[x]) m(t, g.mul[t][x]) = 1.0;
  return m;
}

Mat lambda_op(const Groupoid& g, int s) {
  Mat m = Mat::Zero(g.n, g.n);
  for (int t = 0; t < g.n; ++t)
    if (g.tgt[t] == g.tgt[s]) m(t, g.mul[g.inv[s]][t]) = 1.0;
  return m;
}

std::pair<WeakHopf, WeakHopf> commutative_oracle(const Groupoid& g) {
  const int n = g.n;
  WeakHopf cg;  // C(G) in the delta basis
  cg.n = n;
  for (int x = 0; x < n; ++x) {
    Mat e = Mat::Zero(n, n);
    e(x, x) = 1.0;
    cg.basis.push_back(e);
  }
  cg.unit_op = Mat::Identity(n, n);
  cg.coproduct = Mat::Zero(n * n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.defined(a, b)) cg.coproduct(a * n + b, g.mul[a][b]) = 1.0;
  cg.antipode = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) cg.antipode(g.inv[x], x) = 1.0;
  cg.counit = RowVec::Zero(n);
  for (int u : g.units) cg.counit(u) = 1.0;

  WeakHopf rg;  // R(G) in the rho basis
  rg.n = n;
  for (int x = 0; x < n; ++x) rg.basis.push_back(rho_op(g, x));
  rg.unit_op = Mat::Identity(n, n);
  rg.coproduct = Mat::Zero(n * n, n);
  for (int x = 0; x < n; ++x) rg.coproduct(x * n + x, x) = 1.0;
  rg.antipode = Mat::Zero(n, n);
  for (int x = 0; x < n; ++x) rg.antipode(g.inv[x], x) = 1.0;
  rg.counit = RowVec::Ones(n);
  return {cg, rg};
}

Report wha_match(const WeakHopf& a, const WeakHopf& b, const std::vector<Mat>& images) {
  Report rep;
  const int d = a.dim();
  std::vector<Mat> imgs = images.empty() ? a.basis : images;
  if (images.empty())
    rep.add("span_equal",
            subspace_residual(span_of(a.basis, a.n), span_of(b.basis, b.n)));

  Mat c(b.dim(), d);
  double in_alg = 0.0;
  for (int i = 0; i < d; ++i) {
    c.col(i) = b.coords(imgs[i]);
    in_alg = std::max(in_alg, b.span_residual(imgs[i]));
  }
  rep.add("image_in_algebra", in_alg);
  rep.add("injective", num_rank(c) == d ? 0.0 : 1.0);
  rep.add("unit", op_norm(b.op(c * a.coords(a.unit_op)) - b.unit_op));

  double mult = 0.0, star = 0.0;
  for (int i = 0; i < d; ++i) {
    star = std::max(star,
                    op_norm(b.op(c * a.coords(a.basis[i].adjoint())) - Mat(imgs[i].adjoint())));
    for (int j = 0; j < d; ++j)
      mult = std::max(mult,
                      op_norm(b.op(c * a.coords(a.basis[i] * a.basis[j])) - imgs[i] * imgs[j]));
  }
  rep.add("multiplicative", mult);
  rep.add("star", star);
  rep.add("coproduct", (kron(c, c) * a.coproduct - b.coproduct * c).norm());
  rep.add("antipode", (c * a.antipode - b.antipode * c).norm());
  rep.add("counit", (b.counit * c - a.counit).norm());
  if (a.has_haar() && b.has_haar()) rep.add("haar", (b.haar * c - a.haar).norm());
  rep.sort();
  return rep;
}

}  // namespace fqg
