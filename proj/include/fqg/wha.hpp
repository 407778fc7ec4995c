#ifndef FQG_WHA_HPP
#define FQG_WHA_HPP

#include "fqg/mpi.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fqg {

struct WhaError : std::runtime_error {
  std::string kind;  // NotRegular, InconsistentSlices, NoSolution, NonUnique,
                     // NotPositive, Degenerate, NotFaithful,
                     // AntipodeNotInvolutiveOnCartan
  WhaError(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

/// Weak Hopf C*-algebra presented by a linearly independent operator basis
/// a_1..a_d on C^n. Structure maps are stored as coordinate matrices in
/// that basis; the coproduct lands in the tensor basis a_i (x) a_j with
/// index i*d + j (the kron convention). Nothing here is assumed correct:
/// verify_weak_hopf recomputes every axiom.
struct WeakHopf {
  int n = 0;               // the operators act on C^n
  std::vector<Mat> basis;  // linearly independent, spans the algebra
  Mat unit_op;             // unit of the algebra as an operator
  Mat coproduct;           // d^2 x d, column k = coords of Gamma(a_k)
  Mat antipode;            // d x d, column k = coords of kappa(a_k)
  RowVec counit;           // 1 x d
  RowVec haar;             // 1 x d; size 0 until a Haar measure is attached

  int dim() const { return static_cast<int>(basis.size()); }
  bool has_haar() const { return haar.size() == dim(); }

  /// Least-squares coordinates of an operator in the basis.
  Vec coords(const Mat& x) const;
  /// Distance from x to the span of the basis.
  double span_residual(const Mat& x) const;
  Mat op(const Vec& c) const;

  Mat coprod_op(const Mat& x) const;    // Gamma(x) on C^{n^2}
  Mat antipode_op(const Mat& x) const;  // kappa(x)
  Complex counit_of(const Mat& x) const;
  Complex haar_of(const Mat& x) const;
};

enum class Side { left, right };

/// Build (S, Gamma, kappa, epsilon) [left] or (S_hat, Gamma_hat, kappa_hat,
/// epsilon_hat) [right] from a regular mpi. The coproduct is Gamma(s) =
/// I(s (x) 1)I* resp. Gamma_hat(s) = I*(1 (x) s)I; antipode and counit are
/// recovered by least squares from their values on the spanning slices, and
/// the defect of that system must be below tol.
WeakHopf extract_wha(const Mpi& I, Side side, double tol = kTol);

/// One residual per axiom of the weak Hopf definition: coassociativity,
/// coproduct multiplicativity and *-compatibility, antipode properties,
/// weak comultiplicativity, counit laws and counit positivity.
Report verify_weak_hopf(const WeakHopf& w);

struct CartanResult {
  StarSubspace target;  // A_t
  StarSubspace source;  // A_s
  Report report;        // commutation of A_t with A_s, kappa(A_t) = A_s
};
CartanResult cartan(const WeakHopf& w);

/// Solve the three Haar conditions (kappa-invariance, normalization, strong
/// invariance) as one linear system. Throws NoSolution / NonUnique /
/// NotPositive when the system degenerates or the form is not a faithful
/// state on the algebra.
RowVec haar_solve(const WeakHopf& w, double tol = kTol);

struct HaarDerived {
  Mat es_map, et_map;  // d x d coordinate matrices of E^s, E^t
  Mat g_s, g_t;        // positive elements of A, as operators
  Report report;
};
/// Conditional expectations E^s = (phi (x) i)Gamma, E^t = (i (x) phi)Gamma,
/// the elements g_s = E^s(1)^{1/2}, g_t = kappa(g_s), and the modular
/// identity kappa^2 = g_t g_s^{-1} (.) g_t^{-1} g_s (diagnostic entry).
HaarDerived haar_derived(const WeakHopf& w, const RowVec& phi);

struct PairingResult {
  Mat p;              // d x d pairing matrix, <s_i, s_hat_j>
  int rank = 0;
  double defect = 0;  // least-squares defect = well-definedness residual
};
/// Duality bracket <(omega (x) i)(I), (i (x) omega')(I)> = (omega (x)
/// omega')(I) in the orthonormal bases of S and S_hat. Throws Degenerate
/// when the rank falls short of the common dimension.
PairingResult pairing(const Mpi& I, double tol = kTol);

/// GNS reconstruction: on H_phi = A with <x,y> = phi(y*x), the map
/// Lambda(x (x) y) -> Lambda(Gamma(x)(1 (x) y)) as a matrix in an
/// orthonormal basis, with base representations alpha(n) = right
/// multiplication by kappa(n), beta = pi_phi on A_t, beta_hat = pi_phi of
/// kappa(A_t), indexed by the minimal projections of A_t.
Mpi gns_mpi(const WeakHopf& w, double tol = kTol);

/// Minimal projections of a commutative *-subalgebra, obtained from the
/// spectral projections of a fixed generic hermitian element. Order is
/// deterministic (decreasing eigenvalue of that element).
std::vector<Mat> minimal_projections(const StarSubspace& a);

/// The two commutative-case structures built directly from the groupoid:
/// first = (C(G), Gamma(f)(x,y) = f(xy), f -> f(.^{-1}), sum over units) in
/// the delta basis; second = (R(G), rho(s) -> rho(s) (x) rho(s), rho(s) ->
/// rho(s^{-1}), 1) in the rho basis. These never touch an mpi.
std::pair<WeakHopf, WeakHopf> commutative_oracle(const Groupoid& g);

/// Right regular representation rho(x) on l^2(G): rho(x)xi(t) = xi(tx)
/// when s(t) = r(x).
Mat rho_op(const Groupoid& g, int x);
/// Left regular representation lambda(s)xi(t) = xi(s^{-1}t) when r(t) = r(s).
Mat lambda_op(const Groupoid& g, int s);

/// Structure-constant comparison of two presentations. images[i] is the
/// operator in b's ambient space that the claimed isomorphism assigns to
/// a.basis[i]; pass an empty vector when both live on the same space and
/// the map is the identity. Residuals: span equality (identity case),
/// injectivity gap, and the intertwining of unit, product, star, coproduct,
/// antipode and counit.
Report wha_match(const WeakHopf& a, const WeakHopf& b,
                 const std::vector<Mat>& images = {});

}  // namespace fqg

#endif
