#ifndef FQG_STARALG_HPP
#define FQG_STARALG_HPP

#include "fqg/groupoid.hpp"
#include "fqg/linop.hpp"

#include <vector>

namespace fqg {

/// Subspace of operators on C^ambient, stored as an orthonormal basis under
/// the trace inner product <A,B> = Tr(B* A). Closure flags are verified by
/// the constructors, never asserted.
struct StarSubspace {
  int ambient = 0;
  std::vector<Mat> basis;
  bool closed_under_product = false;
  bool closed_under_adjoint = false;

  int dim() const { return static_cast<int>(basis.size()); }

  /// Columns = vectorized basis elements (ambient^2 x dim).
  Mat basis_matrix() const;
  /// Coordinates of an operator in the orthonormal basis.
  Vec coords(const Mat& a) const;
  /// Distance from a to the subspace, relative to nothing (absolute norm).
  double residual_of(const Mat& a) const;
  /// Membership within tolerance.
  bool contains(const Mat& a, double tol = kTol) const { return residual_of(a) < tol; }
  Mat from_coords(const Vec& c) const;
};

Vec vec_op(const Mat& a);
Mat unvec_op(const Vec& v, int n);

/// Orthonormalized span of the given operators (no closure).
StarSubspace span_of(const std::vector<Mat>& ops, int ambient);

/// Smallest subspace containing gens that is closed under product and
/// adjoint; grown by alternating span growth and orthonormalization. With
/// unital = true the ambient identity is adjoined first.
StarSubspace generated_algebra(const std::vector<Mat>& gens, int ambient, bool unital = false);

/// Commutant of the given operators inside all of L(C^ambient).
StarSubspace commutant(const std::vector<Mat>& gens, int ambient);

/// Symmetric gap between two subspaces (max projection residual, both ways).
double subspace_residual(const StarSubspace& a, const StarSubspace& b);
bool subspace_equal(const StarSubspace& a, const StarSubspace& b, double tol = kTol);

StarSubspace intersect(const StarSubspace& a, const StarSubspace& b);
StarSubspace center(const StarSubspace& a);

/// Representation of the commutative base N = C(G^0) by diagonal
/// projections: proj[i] for unit units[i]; projections are orthogonal and
/// sum to the identity.
struct BaseRep {
  std::vector<Mat> proj;
  int ambient() const { return proj.empty() ? 0 : static_cast<int>(proj[0].rows()); }
  Mat apply(const Vec& f) const;  // Sigma f_i proj[i]
};

/// Diagonal base representation on l^2(G) induced by a unit-valued map
/// (label[g] = unit id attached to basis vector g).
BaseRep base_rep_from_labels(const Groupoid& g, const std::vector<int>& label);

/// e = Sigma_u s_rep(chi_u) (x) r_rep(chi_u), the commutative specialization
/// of the canonical projection; the unique projection with e(s(n) (x) 1) =
/// e(1 (x) r(n)) and nondegenerate legs.
Mat e_proj(const BaseRep& s_rep, const BaseRep& r_rep);

/// Diagnostic value (i (x) Tr)(e_{s,r}); positive and invertible in the
/// center of s(N).
Mat e_proj_partial_trace(const BaseRep& s_rep, const BaseRep& r_rep);

}  // namespace fqg

#endif
