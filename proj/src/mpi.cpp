#include "fqg/mpi.hpp"

namespace fqg {

namespace {

double max_base_commutator(const Mpi& I) {
  double r = 0.0;
  for (const Mat& b : I.beta.proj)
    for (const Mat& bh : I.beta_hat.proj) {
      const Mat x = kron(b, bh);
      r = std::max(r, op_norm(I.matrix * x - x * I.matrix));
    }
  return r;
}

double max_intertwining(const Mpi& I) {
  double r = 0.0;
  for (size_t ai = 0; ai < I.alpha.proj.size(); ++ai)
    for (size_t bi = 0; bi < I.beta.proj.size(); ++bi) {
      const Mat lhs = I.matrix * kron(I.alpha.proj[ai], I.beta.proj[bi]);
      const Mat rhs = kron(I.beta_hat.proj[bi], I.alpha.proj[ai]) * I.matrix;
      r = std::max(r, op_norm(lhs - rhs));
    }
  return r;
}

}  // namespace

Mpi build_I_G(const Groupoid& g) {
  Mpi I;
  I.n = g.n;
  I.provenance = "I_G";
  I.matrix = Mat::Zero(g.n * g.n, g.n * g.n);
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (g.src[x] == g.tgt[y]) I.matrix(x * g.n + y, g.mul[x][y] * g.n + y) = 1.0;
  I.alpha = base_rep_from_labels(g, g.src);
  I.beta = base_rep_from_labels(g, g.tgt);
  I.beta_hat = base_rep_from_labels(g, g.src);
  return I;
}

Mpi build_I_HK(const MatchPair& mp) {
  const Groupoid& g = mp.g;
  Mpi I;
  I.n = g.n;
  I.provenance = "I_HK";
  I.matrix = Mat::Zero(g.n * g.n, g.n * g.n);
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y) {
      if (mp.m[x] != g.tgt[y]) continue;
      const int v = g.at(g.inv[mp.p2[x]], y);   // p2(x)^{-1} y, always composable
      const int a = g.at(x, mp.p1[v]);          // x p1(p2(x)^{-1} y)
      I.matrix(x * g.n + y, a * g.n + v) = 1.0;
    }
  I.alpha = base_rep_from_labels(g, mp.m);
  I.beta = base_rep_from_labels(g, g.tgt);
  I.beta_hat = base_rep_from_labels(g, g.src);
  return I;
}

Report verify_mpi(const Mpi& I, int max_pentagon_dim) {
  Report rep;
  const Mat& m = I.matrix;
  rep.add("initial_support", op_norm(m.adjoint() * m - I.e_initial()));
  rep.add("final_support", op_norm(m * m.adjoint() - I.e_final()));
  rep.add("base_commutation", max_base_commutator(I));
  rep.add("intertwining", max_intertwining(I));
  if (I.n <= max_pentagon_dim) {
    const Mat l12 = leg12(m, I.n), l13 = leg13(m, I.n), l23 = leg23(m, I.n);
    rep.add("pentagon", op_norm(l12 * l13 * l23 - l23 * l12));
  }
  rep.sort();
  return rep;
}

std::pair<StarSubspace, StarSubspace> leg_algebras(const Mpi& I) {
  std::vector<Mat> s_ops, shat_ops;
  for (int p = 0; p < I.n; ++p)
    for (int q = 0; q < I.n; ++q) {
      const LinearForm omega{basis_vec(I.n, p), basis_vec(I.n, q)};
      s_ops.push_back(slice_left(I.matrix, I.n, I.n, omega));
      shat_ops.push_back(slice_right(I.matrix, I.n, I.n, omega));
    }
  return {span_of(s_ops, I.n), span_of(shat_ops, I.n)};
}

RegularityResult is_regular(const Mpi& I) {
  const Mat sigma_i = swap_op(I.n, I.n) * I.matrix;
  std::vector<Mat> slices;
  for (int p = 0; p < I.n; ++p)
    for (int q = 0; q < I.n; ++q)
      slices.push_back(slice_right(sigma_i, I.n, I.n, {basis_vec(I.n, p), basis_vec(I.n, q)}));
  const StarSubspace span = span_of(slices, I.n);
  const StarSubspace alpha_comm = commutant(I.alpha.proj, I.n);
  RegularityResult res;
  res.residual = subspace_residual(span, alpha_comm);
  res.regular = res.residual < kTol;
  return res;
}

Report four_corners(const Mpi& I) {
  Report rep;
  auto [s, shat] = leg_algebras(I);
  const StarSubspace alpha_span = span_of(I.alpha.proj, I.n);
  const StarSubspace beta_hat_span = span_of(I.beta_hat.proj, I.n);
  const StarSubspace beta_span = span_of(I.beta.proj, I.n);
  const StarSubspace s_comm = commutant(s.basis, I.n);
  const StarSubspace shat_comm = commutant(shat.basis, I.n);

  rep.add("S_cap_Shat_eq_alphaN", subspace_residual(intersect(s, shat), alpha_span));
  rep.add("S_cap_Shat_comm_eq_betaN", subspace_residual(intersect(s, shat_comm), beta_span));
  rep.add("S_comm_cap_Shat_eq_betahatN", subspace_residual(intersect(s_comm, shat), beta_hat_span));

  // Weyl algebra: span{s s_hat} equals the generated algebra of S and S_hat
  std::vector<Mat> products;
  for (const Mat& a : s.basis)
    for (const Mat& b : shat.basis) products.push_back(a * b);
  std::vector<Mat> gens = s.basis;
  gens.insert(gens.end(), shat.basis.begin(), shat.basis.end());
  rep.add("weyl_spanning",
          subspace_residual(span_of(products, I.n), generated_algebra(gens, I.n)));
  rep.sort();
  return rep;
}

}  // namespace fqg
