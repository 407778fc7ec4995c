#ifndef FQG_MPI_HPP
#define FQG_MPI_HPP

#include "fqg/groupoid.hpp"
#include "fqg/report.hpp"
#include "fqg/staralg.hpp"

#include <utility>

namespace fqg {

/// Multiplicative partial isometry on l^2(G) (x) l^2(G) with its base
/// representations (alpha, beta, beta_hat) of C(G^0). The defining axioms
/// are established by verify_mpi, never assumed.
struct Mpi {
  int n = 0;            // carrier dimension
  Mat matrix;           // on C^{n^2}
  BaseRep alpha, beta, beta_hat;
  std::string provenance;

  Mat e_initial() const { return e_proj(beta_hat, alpha); }
  Mat e_final() const { return e_proj(alpha, beta); }
};

/// I_G(xi)(x,y) = xi(xy, y) when s(x) = r(y); base alpha = beta_hat =
/// source diagonals, beta = range diagonals.
Mpi build_I_G(const Groupoid& g);

/// I_{H,K}(f)(x,y) = f(x p1(p2(x)^{-1} y), p2(x)^{-1} y) when m(x) = r(y);
/// base alpha = middle diagonals, beta = range, beta_hat = source.
Mpi build_I_HK(const MatchPair& mp);

/// Residuals for the mpi axioms: supports, base commutation, intertwining
/// and the pentagon relation. The pentagon is skipped (with a note entry of
/// residual 0 omitted) when n exceeds max_pentagon_dim.
Report verify_mpi(const Mpi& I, int max_pentagon_dim = 12);

/// Slice algebras S = {(omega (x) i)(I)} and S_hat = {(i (x) omega)(I)},
/// spanned by the basis rank-one forms.
std::pair<StarSubspace, StarSubspace> leg_algebras(const Mpi& I);

struct RegularityResult {
  bool regular = false;
  double residual = 0.0;  // gap between the Sigma-I slice span and alpha(N)'
};
RegularityResult is_regular(const Mpi& I);

/// Four-corners intersections S cap S_hat = alpha(N), S cap S_hat' =
/// beta(N)', S' cap S_hat = beta_hat(N), plus the Weyl-algebra spanning
/// identity span{s s_hat} = <S, S_hat>.
Report four_corners(const Mpi& I);

}  // namespace fqg

#endif
