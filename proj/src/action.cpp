#include "fqg/action.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <random>

namespace fqg {

namespace {

Mat null_space(const Mat& a) {
  if (a.rows() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = (sv.size() > 0 ? sv(0) : 0.0) * kRankCut;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut && sv(i) > 1e-13) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

int rank_of(const Mat& a) {
  if (a.size() == 0) return 0;
  return num_rank(a);
}

std::vector<int> unit_slot_table(const VNModule& m) {
  std::vector<int> slot(m.g.n, -1);
  for (int i = 0; i < static_cast<int>(m.g.units.size()); ++i) slot[m.g.units[i]] = i;
  return slot;
}

Vec global_coords(const VNModule& m, const AElem& a) {
  Vec c(m.total_alg_dim());
  int off = 0;
  for (int u = 0; u < m.fibers(); ++u) {
    c.segment(off, m.alg_dim(u)) = m.fiber_coords(u, a[u]);
    off += m.alg_dim(u);
  }
  return c;
}

AElem elem_from_global(const VNModule& m, const Vec& c) {
  AElem a(m.fibers());
  int off = 0;
  for (int u = 0; u < m.fibers(); ++u) {
    a[u] = m.fiber_from_coords(u, c.segment(off, m.alg_dim(u)));
    off += m.alg_dim(u);
  }
  return a;
}

AElem elem_product(const AElem& a, const AElem& b) {
  AElem c(a.size());
  for (size_t u = 0; u < a.size(); ++u) c[u] = a[u] * b[u];
  return c;
}

AElem elem_adjoint(const AElem& a) {
  AElem c(a.size());
  for (size_t u = 0; u < a.size(); ++u) c[u] = a[u].adjoint();
  return c;
}

/// Restriction of g to the elements `ids` (which must be closed and contain
/// every unit of g that its elements touch), with dense local ids.
Groupoid restricted_groupoid(const Groupoid& g, const std::vector<int>& ids) {
  std::vector<int> local(g.n, -1);
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) local[ids[i]] = i;
  Groupoid h;
  h.n = static_cast<int>(ids.size());
  for (int u : g.units)
    if (local[u] >= 0) h.units.push_back(local[u]);
  h.src.resize(h.n);
  h.tgt.resize(h.n);
  h.inv.resize(h.n);
  h.mul.assign(h.n, std::vector<int>(h.n, -1));
  for (int i = 0; i < h.n; ++i) {
    int x = ids[i];
    if (local[g.src[x]] < 0 || local[g.tgt[x]] < 0 || local[g.inv[x]] < 0)
      throw GroupoidError("ClosureViolated", "restriction is not a subgroupoid");
    h.src[i] = local[g.src[x]];
    h.tgt[i] = local[g.tgt[x]];
    h.inv[i] = local[g.inv[x]];
    for (int j = 0; j < h.n; ++j) {
      int z = g.mul[x][ids[j]];
      if (z >= 0) {
        if (local[z] < 0) throw GroupoidError("ClosureViolated", "restriction is not closed");
        h.mul[i][j] = local[z];
      }
    }
  }
  return validate(std::move(h));
}

}  // namespace

int VNModule::rep_dim(int u) const {
  int m = 0;
  for (int b : blocks[u]) m += b;
  return m;
}

int VNModule::alg_dim(int u) const {
  int d = 0;
  for (int b : blocks[u]) d += b * b;
  return d;
}

int VNModule::total_alg_dim() const {
  int d = 0;
  for (int u = 0; u < fibers(); ++u) d += alg_dim(u);
  return d;
}

std::vector<Mat> VNModule::fiber_basis(int u) const {
  std::vector<Mat> out;
  int m = rep_dim(u);
  int off = 0;
  for (int b : blocks[u]) {
    for (int a = 0; a < b; ++a)
      for (int c = 0; c < b; ++c) {
        Mat e = Mat::Zero(m, m);
        e(off + a, off + c) = 1.0;
        out.push_back(e);
      }
    off += b;
  }
  return out;
}

Vec VNModule::fiber_coords(int u, const Mat& x) const {
  Vec c(alg_dim(u));
  int off = 0, k = 0;
  for (int b : blocks[u]) {
    for (int a = 0; a < b; ++a)
      for (int cc = 0; cc < b; ++cc) c(k++) = x(off + a, off + cc);
    off += b;
  }
  return c;
}

Mat VNModule::fiber_from_coords(int u, const Vec& c) const {
  int m = rep_dim(u);
  Mat x = Mat::Zero(m, m);
  int off = 0, k = 0;
  for (int b : blocks[u]) {
    for (int a = 0; a < b; ++a)
      for (int cc = 0; cc < b; ++cc) x(off + a, off + cc) = c(k++);
    off += b;
  }
  return x;
}

std::vector<Vec> VNModule::fiber_center_projections(int u) const {
  std::vector<Vec> out;
  int m = rep_dim(u);
  int off = 0;
  for (int b : blocks[u]) {
    Mat z = Mat::Zero(m, m);
    for (int a = 0; a < b; ++a) z(off + a, off + a) = 1.0;
    out.push_back(fiber_coords(u, z));
    off += b;
  }
  return out;
}

int VNModule::unit_slot(int unit_elem) const {
  for (int i = 0; i < static_cast<int>(g.units.size()); ++i)
    if (g.units[i] == unit_elem) return i;
  throw GroupoidError("PartialityMismatch", "not a unit element: " + std::to_string(unit_elem));
}

AElem zero_elem(const VNModule& m) {
  AElem a(m.fibers());
  for (int u = 0; u < m.fibers(); ++u) a[u] = Mat::Zero(m.rep_dim(u), m.rep_dim(u));
  return a;
}

AElem unit_elem(const VNModule& m) {
  AElem a(m.fibers());
  for (int u = 0; u < m.fibers(); ++u) a[u] = m.fiber_unit(u);
  return a;
}

std::vector<AElem> module_basis(const VNModule& m) {
  std::vector<AElem> out;
  for (int u = 0; u < m.fibers(); ++u)
    for (const Mat& b : m.fiber_basis(u)) {
      AElem a = zero_elem(m);
      a[u] = b;
      out.push_back(a);
    }
  return out;
}

Mat GroupoidAction::apply(int g, const Mat& x) const {
  int us = mod.unit_slot(mod.g.src[g]);
  int ur = mod.unit_slot(mod.g.tgt[g]);
  return mod.fiber_from_coords(ur, maps[g] * mod.fiber_coords(us, x));
}

GroupoidAction identity_action(const Groupoid& g) {
  GroupoidAction act;
  act.mod.g = g;
  act.mod.blocks.assign(g.units.size(), {1});
  act.maps.assign(g.n, Mat::Identity(1, 1));
  return act;
}

Report validate_action(const GroupoidAction& act) {
  const VNModule& m = act.mod;
  Report rep;
  double unital = 0, multiplicative = 0, star = 0, bijective = 0, functorial = 0,
         units_id = 0, trace = 0;
  for (int g = 0; g < m.g.n; ++g) {
    int us = m.unit_slot(m.g.src[g]), ur = m.unit_slot(m.g.tgt[g]);
    if (act.maps[g].rows() != m.alg_dim(ur) || act.maps[g].cols() != m.alg_dim(us))
      throw ShapeMismatch("action map " + std::to_string(g));
    if (m.rep_dim(us) != m.rep_dim(ur) || m.alg_dim(us) != m.alg_dim(ur))
      throw ActionError("NotTracePreserving",
                        "fibers of src/tgt of " + std::to_string(g) + " are not isomorphic");
    unital = std::max(unital, op_norm(act.apply(g, m.fiber_unit(us)) - m.fiber_unit(ur)));
    bijective = std::max(bijective, rank_of(act.maps[g]) == m.alg_dim(us) ? 0.0 : 1.0);
    auto basis = m.fiber_basis(us);
    for (const Mat& x : basis) {
      star = std::max(star, op_norm(act.apply(g, Mat(x.adjoint())) - act.apply(g, x).adjoint()));
      trace = std::max(trace, std::abs(act.apply(g, x).trace() - x.trace()));
      for (const Mat& y : basis)
        multiplicative = std::max(
            multiplicative, op_norm(act.apply(g, Mat(x * y)) - act.apply(g, x) * act.apply(g, y)));
    }
  }
  for (int u : m.g.units)
    units_id =
        std::max(units_id, (act.maps[u] - Mat::Identity(act.maps[u].rows(), act.maps[u].cols()))
                               .norm());
  for (auto [g, h] : m.g.composable_pairs())
    functorial = std::max(functorial, (act.maps[m.g.at(g, h)] - act.maps[g] * act.maps[h]).norm());
  rep.add("action_bijective", bijective);
  rep.add("action_functorial", functorial);
  rep.add("action_multiplicative", multiplicative);
  rep.add("action_star", star);
  rep.add("action_trace_preserving", trace);
  rep.add("action_unital", unital);
  rep.add("action_units_identity", units_id);
  rep.sort();
  return rep;
}

Mat gns_rep(const VNModule& m, int u, const Mat& x) {
  auto basis = m.fiber_basis(u);
  int d = m.alg_dim(u);
  Mat out(d, d);
  for (int k = 0; k < d; ++k) out.col(k) = m.fiber_coords(u, Mat(x * basis[k]));
  return out;
}

CrossedCarrier CrossedCarrier::of(const VNModule& m) {
  CrossedCarrier k;
  k.mod = m;
  k.offset.resize(m.g.n);
  k.dim = 0;
  for (int g = 0; g < m.g.n; ++g) {
    k.offset[g] = k.dim;
    k.dim += m.alg_dim(m.unit_slot(m.g.tgt[g]));
  }
  return k;
}

Mat delta_op(const GroupoidAction& act, const CrossedCarrier& k, const AElem& a) {
  const VNModule& m = act.mod;
  Mat out = Mat::Zero(k.dim, k.dim);
  for (int g = 0; g < m.g.n; ++g) {
    int us = m.unit_slot(m.g.src[g]), ur = m.unit_slot(m.g.tgt[g]);
    int d = m.alg_dim(ur);
    out.block(k.offset[g], k.offset[g], d, d) = gns_rep(m, ur, act.apply(g, a[us]));
  }
  return out;
}

Mat source_op(const GroupoidAction& act, const CrossedCarrier& k, const AElem& a) {
  const VNModule& m = act.mod;
  Mat out = Mat::Zero(k.dim, k.dim);
  for (int g = 0; g < m.g.n; ++g) {
    int us = m.unit_slot(m.g.src[g]);
    int d = m.alg_dim(us);
    out.block(k.offset[g], k.offset[g], d, d) = gns_rep(m, us, a[us]);
  }
  return out;
}

Mat rho_tilde(const CrossedCarrier& k, int h) {
  const Groupoid& g = k.mod.g;
  Mat out = Mat::Zero(k.dim, k.dim);
  for (int x = 0; x < g.n; ++x) {
    if (g.src[x] != g.tgt[h]) continue;
    int xh = g.at(x, h);
    int d = k.mod.alg_dim(k.mod.unit_slot(g.tgt[x]));
    out.block(k.offset[x], k.offset[xh], d, d) = Mat::Identity(d, d);
  }
  return out;
}

Report delta_report(const GroupoidAction& act) {
  const VNModule& m = act.mod;
  CrossedCarrier car = CrossedCarrier::of(m);
  auto basis = module_basis(m);
  int dd = static_cast<int>(basis.size());
  Report rep;

  Mat cols(car.dim * car.dim, dd);
  std::vector<Mat> dops(dd);
  for (int i = 0; i < dd; ++i) {
    dops[i] = delta_op(act, car, basis[i]);
    cols.col(i) = vec_op(dops[i]);
  }
  rep.add("delta_injective", rank_of(cols) == dd ? 0.0 : 1.0);

  double hom = 0, star = 0;
  for (int i = 0; i < dd; ++i) {
    star = std::max(star, op_norm(delta_op(act, car, elem_adjoint(basis[i])) - dops[i].adjoint()));
    for (int j = 0; j < dd; ++j)
      hom = std::max(hom,
                     op_norm(delta_op(act, car, elem_product(basis[i], basis[j])) - dops[i] * dops[j]));
  }
  rep.add("delta_homomorphism", hom);
  rep.add("delta_star", star);
  rep.add("delta_unit", op_norm(delta_op(act, car, unit_elem(m)) - Mat::Identity(car.dim, car.dim)));

  // (delta (x) i)delta = (i (x) Gamma)delta in the A-valued function
  // picture: alpha_g alpha_{g'} = alpha_{gg'} applied to each basis element.
  double coassoc = 0;
  for (auto [g, h] : m.g.composable_pairs()) {
    int us = m.unit_slot(m.g.src[h]);
    for (const Mat& x : m.fiber_basis(us))
      coassoc = std::max(coassoc,
                         op_norm(act.apply(g, act.apply(h, x)) - act.apply(m.g.at(g, h), x)));
  }
  rep.add("delta_coassociativity", coassoc);

  // delta(b(chi_u)) = e_{b,i}(1 (x) kappa(beta(chi_u))), both sides the
  // diagonal [s(g) = u] on the carrier.
  double base = 0;
  for (int u : m.g.units) {
    AElem bu = zero_elem(m);
    int slot = m.unit_slot(u);
    bu[slot] = m.fiber_unit(slot);
    Mat lhs = delta_op(act, car, bu);
    Mat rhs = Mat::Zero(car.dim, car.dim);
    for (int g = 0; g < m.g.n; ++g)
      if (m.g.src[g] == u) {
        int d = m.alg_dim(m.unit_slot(m.g.tgt[g]));
        rhs.block(car.offset[g], car.offset[g], d, d) = Mat::Identity(d, d);
      }
    base = std::max(base, op_norm(lhs - rhs));
  }
  rep.add("delta_base_condition", base);
  rep.sort();
  return rep;
}

Mat iota_op(const VNModule& m, const AElem& a) {
  int dim = m.total_alg_dim();
  Mat out = Mat::Zero(dim, dim);
  int off = 0;
  for (int u = 0; u < m.fibers(); ++u) {
    int d = m.alg_dim(u);
    out.block(off, off, d, d) = gns_rep(m, u, a[u]);
    off += d;
  }
  return out;
}

FixedPoints fixed_points(const GroupoidAction& act) {
  const VNModule& m = act.mod;
  int dd = m.total_alg_dim();
  std::vector<int> off(m.fibers());
  int o = 0;
  for (int u = 0; u < m.fibers(); ++u) {
    off[u] = o;
    o += m.alg_dim(u);
  }
  int rows = 0;
  for (int g = 0; g < m.g.n; ++g) rows += m.alg_dim(m.unit_slot(m.g.tgt[g]));
  Mat cond = Mat::Zero(rows, dd);
  int r = 0;
  for (int g = 0; g < m.g.n; ++g) {
    int us = m.unit_slot(m.g.src[g]), ur = m.unit_slot(m.g.tgt[g]);
    int d = m.alg_dim(ur);
    cond.block(r, off[us], d, m.alg_dim(us)) = act.maps[g];
    cond.block(r, off[ur], d, d) -= Mat::Identity(d, d);
    r += d;
  }
  FixedPoints fp;
  Mat ns = null_space(cond);
  std::vector<Mat> ops;
  for (int i = 0; i < ns.cols(); ++i) {
    fp.elems.push_back(elem_from_global(m, ns.col(i)));
    ops.push_back(iota_op(m, fp.elems.back()));
  }
  fp.sub = span_of(ops, dd);
  fp.report.add("fixed_points_star_algebra",
                (fp.sub.closed_under_product && fp.sub.closed_under_adjoint) ? 0.0 : 1.0);
  fp.report.add("fixed_points_unital", fp.sub.residual_of(iota_op(m, unit_elem(m))));
  fp.report.sort();
  return fp;
}

TDelta t_delta(const GroupoidAction& act, const RowVec& phi) {
  const VNModule& m = act.mod;
  if (phi.size() != m.g.n) throw ShapeMismatch("haar vector length");
  int dd = m.total_alg_dim();
  std::vector<int> off(m.fibers());
  int o = 0;
  for (int u = 0; u < m.fibers(); ++u) {
    off[u] = o;
    o += m.alg_dim(u);
  }
  Mat t = Mat::Zero(dd, dd);
  for (int g = 0; g < m.g.n; ++g) {
    int us = m.unit_slot(m.g.src[g]), ur = m.unit_slot(m.g.tgt[g]);
    t.block(off[ur], off[us], m.alg_dim(ur), m.alg_dim(us)) += phi(g) * act.maps[g];
  }
  TDelta out;
  out.map = t;
  out.report.add("t_idempotent", (t * t - t).norm());
  out.report.add("t_unital",
                 (t * global_coords(m, unit_elem(m)) - global_coords(m, unit_elem(m))).norm());

  FixedPoints fp = fixed_points(act);
  auto basis = module_basis(m);
  std::vector<Mat> range;
  for (const AElem& b : basis) range.push_back(iota_op(m, elem_from_global(m, t * global_coords(m, b))));
  out.report.add("t_range_eq_fixed_points", subspace_residual(span_of(range, dd), fp.sub));

  double bimod = 0;
  for (const AElem& f : fp.elems)
    for (const AElem& b : basis) {
      AElem tb = elem_from_global(m, t * global_coords(m, b));
      bimod = std::max(bimod, (t * global_coords(m, elem_product(f, b)) -
                               global_coords(m, elem_product(f, tb)))
                                  .norm());
      bimod = std::max(bimod, (t * global_coords(m, elem_product(b, f)) -
                               global_coords(m, elem_product(tb, f)))
                                  .norm());
    }
  out.report.add("t_bimodular", bimod);

  // Faithfulness: the form tau(T(x* y)) must be positive definite, tau the
  // canonical normalized trace of A.
  int nb = static_cast<int>(basis.size());
  Mat gram(nb, nb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      AElem p = elem_product(elem_adjoint(basis[i]), basis[j]);
      AElem tp = elem_from_global(m, t * global_coords(m, p));
      Complex v = 0;
      for (int u = 0; u < m.fibers(); ++u) v += tp[u].trace() / static_cast<double>(m.rep_dim(u));
      gram(i, j) = v;
    }
  double herm = (gram - gram.adjoint()).norm();
  Eigen::SelfAdjointEigenSolver<Mat> es((gram + gram.adjoint()) / 2.0);
  double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
  out.report.add("t_faithful", (herm < kTol && lo > 1e-10 * std::max(hi, 1.0)) ? 0.0 : 1.0);
  out.report.sort();
  return out;
}

CrossedProduct crossed_product(const GroupoidAction& act) {
  CrossedProduct cp;
  cp.act = act;
  cp.carrier = CrossedCarrier::of(act.mod);
  const VNModule& m = act.mod;
  for (const AElem& b : module_basis(m)) cp.delta_basis.push_back(delta_op(act, cp.carrier, b));
  for (int h = 0; h < m.g.n; ++h) cp.rho_basis.push_back(rho_tilde(cp.carrier, h));

  std::vector<Mat> gens = cp.delta_basis;
  gens.insert(gens.end(), cp.rho_basis.begin(), cp.rho_basis.end());
  cp.algebra = generated_algebra(gens, cp.carrier.dim);

  cp.expected_dim = 0;
  for (int h = 0; h < m.g.n; ++h) cp.expected_dim += m.alg_dim(m.unit_slot(m.g.tgt[h]));

  double comm = 0;
  auto basis = module_basis(m);
  for (int h = 0; h < m.g.n; ++h) {
    int us = m.unit_slot(m.g.src[h]), ur = m.unit_slot(m.g.tgt[h]);
    for (const AElem& a : basis) {
      AElem moved = zero_elem(m);
      moved[ur] = act.apply(h, a[us]);
      comm = std::max(comm, op_norm(cp.rho_basis[h] * delta_op(act, cp.carrier, a) -
                                    delta_op(act, cp.carrier, moved) * cp.rho_basis[h]));
    }
  }
  cp.report.add("crossed_commutation", comm);
  cp.report.add("crossed_dimension",
                static_cast<double>(std::abs(cp.algebra.dim() - cp.expected_dim)));

  // Spanning family delta(x^h)(1 (x) rho(h)), x^h over a basis of A_{r(h)};
  // it must be a basis of the crossed product (unique decomposition).
  std::vector<Mat> span_ops;
  for (int h = 0; h < m.g.n; ++h) {
    int ur = m.unit_slot(m.g.tgt[h]);
    for (const Mat& b : m.fiber_basis(ur)) {
      AElem a = zero_elem(m);
      a[ur] = b;
      span_ops.push_back(delta_op(act, cp.carrier, a) * cp.rho_basis[h]);
    }
  }
  StarSubspace sp = span_of(span_ops, cp.carrier.dim);
  cp.report.add("crossed_spanning", subspace_residual(sp, cp.algebra));
  cp.report.add("crossed_unique_decomposition",
                sp.dim() == static_cast<int>(span_ops.size()) ? 0.0 : 1.0);
  cp.report.sort();
  return cp;
}

OuterResult outer_test(const GroupoidAction& act) {
  const VNModule& m = act.mod;
  CrossedProduct cp = crossed_product(act);
  OuterResult out;

  StarSubspace relcomm = intersect(commutant(cp.delta_basis, cp.carrier.dim), cp.algebra);
  out.relative_commutant_dim = relcomm.dim();

  std::vector<Mat> target;
  for (int u : m.g.units) {
    int slot = m.unit_slot(u);
    for (const Vec& z : m.fiber_center_projections(slot)) {
      AElem a = zero_elem(m);
      a[slot] = m.fiber_from_coords(slot, z);
      target.push_back(delta_op(act, cp.carrier, a) * cp.rho_basis[u]);
    }
  }
  StarSubspace tgt = span_of(target, cp.carrier.dim);
  out.center_crossed_dim = tgt.dim();
  double inclusion = 0;
  for (const Mat& t : tgt.basis) inclusion = std::max(inclusion, relcomm.residual_of(t));
  out.report.add("outer_center_in_relative_commutant", inclusion);
  out.outer = subspace_equal(relcomm, tgt);

  bool all_factors = true;
  for (const auto& b : m.blocks) all_factors = all_factors && b.size() == 1;
  if (all_factors) {
    IsoSubgroupoid iso = iso_subgroupoid(m.g);
    bool any_inner = false;
    std::mt19937 rng(20260826);
    for (int h : iso.elements) {
      if (m.g.is_unit(h)) continue;
      int u = m.unit_slot(m.g.tgt[h]);
      auto basis = m.fiber_basis(u);
      int d = m.alg_dim(u);
      // a x = x alpha_h(a) for every basis a; columns indexed by coords of x.
      Mat cond(static_cast<int>(basis.size()) * d, d);
      for (int k = 0; k < d; ++k) {
        int r = 0;
        for (const Mat& a : basis) {
          Mat diff = a * basis[k] - basis[k] * act.apply(h, a);
          cond.block(r, k, d, 1) = m.fiber_coords(u, diff);
          r += d;
        }
      }
      Mat ns = null_space(cond);
      bool inner = false;
      Mat witness;
      auto try_x = [&](const Vec& c) {
        Mat x = m.fiber_from_coords(u, c);
        Eigen::JacobiSVD<Mat> svd(x);
        const auto& sv = svd.singularValues();
        if (sv.size() > 0 && sv(sv.size() - 1) > 1e-8 * std::max(1.0, sv(0))) {
          inner = true;
          witness = x;
        }
      };
      for (int i = 0; i < ns.cols() && !inner; ++i) try_x(ns.col(i));
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (int attempt = 0; attempt < 4 && !inner && ns.cols() > 0; ++attempt) {
        Vec c = Vec::Zero(d);
        for (int i = 0; i < ns.cols(); ++i) c += Complex(dist(rng), dist(rng)) * ns.col(i);
        try_x(c);
      }
      if (inner) {
        any_inner = true;
        out.witnesses.emplace_back(h, witness);
      }
    }
    out.outer_inner_criterion = !any_inner;
    out.report.add("outer_criteria_agree", out.outer == !any_inner ? 0.0 : 1.0);
  }
  out.report.sort();
  return out;
}

DualCoaction dual_coaction(const CrossedProduct& cp) {
  const VNModule& m = cp.act.mod;
  const Groupoid& g = m.g;
  int n = g.n, dk = cp.carrier.dim;
  DualCoaction out;

  // e_{beta_hat, alpha} of I_G has both legs the source diagonals; its
  // compressed first leg [s = u] is delta(b(chi_u)) = rho_tilde(u).
  Mat e2 = Mat::Zero(dk * n, dk * n);
  for (int u : g.units) {
    Mat su = Mat::Zero(n, n);
    for (int t = 0; t < n; ++t)
      if (g.src[t] == u) su(t, t) = 1.0;
    e2 += kron(rho_tilde(cp.carrier, u), su);
  }
  auto image_of = [&](const AElem& a, int h) {
    Mat o1 = e2 * kron(delta_op(cp.act, cp.carrier, a), Mat::Identity(n, n));
    return Mat(o1 * kron(cp.rho_basis[h], rho_op(g, h)));
  };

  // Spanning family delta(x)(1 (x) rho(h)) and its images; the coaction is
  // the linear extension through the crossed algebra's orthonormal basis.
  std::vector<Mat> fam, img;
  for (int h = 0; h < n; ++h) {
    int ur = m.unit_slot(g.tgt[h]);
    for (const Mat& b : m.fiber_basis(ur)) {
      AElem a = zero_elem(m);
      a[ur] = b;
      fam.push_back(delta_op(cp.act, cp.carrier, a) * cp.rho_basis[h]);
      img.push_back(image_of(a, h));
    }
  }
  int nf = static_cast<int>(fam.size());
  Mat fam_cols(dk * dk, nf), img_cols(dk * n * dk * n, nf);
  for (int i = 0; i < nf; ++i) {
    fam_cols.col(i) = vec_op(fam[i]);
    img_cols.col(i) = vec_op(img[i]);
  }
  int cd = cp.algebra.dim();
  Eigen::CompleteOrthogonalDecomposition<Mat> cod(fam_cols);
  out.coaction = Mat(dk * n * dk * n, cd);
  double well = 0;
  for (int i = 0; i < cd; ++i) {
    Vec rhs = vec_op(cp.algebra.basis[i]);
    Vec c = cod.solve(rhs);
    well = std::max(well, (fam_cols * c - rhs).norm());
    out.coaction.col(i) = img_cols * c;
  }
  out.report.add("dual_well_defined", well);
  out.report.add("dual_injective", rank_of(out.coaction) == cd ? 0.0 : 1.0);

  auto dual_of = [&](const Mat& z) {
    return unvec_op(Vec(out.coaction * cp.algebra.coords(z)), dk * n);
  };

  double hom = 0;
  for (int i = 0; i < cd; ++i)
    for (int j = 0; j < cd; ++j)
      hom = std::max(hom, op_norm(dual_of(cp.algebra.basis[i] * cp.algebra.basis[j]) -
                                  dual_of(cp.algebra.basis[i]) * dual_of(cp.algebra.basis[j])));
  out.report.add("dual_homomorphism", hom);

  // Leg decomposition delta_hat(z) = Sigma_h Z_h (x) rho(h) with Z_h in the
  // crossed algebra; then coassociativity against Gamma_hat(rho(h)) =
  // rho(h) (x) rho(h).
  Mat legs(dk * n * dk * n, cd * n);
  for (int i = 0; i < cd; ++i)
    for (int h = 0; h < n; ++h)
      legs.col(i * n + h) = vec_op(kron(cp.algebra.basis[i], rho_op(g, h)));
  Eigen::CompleteOrthogonalDecomposition<Mat> legs_cod(legs);
  double in_tensor = 0, coassoc = 0;
  int big = dk * n * n;
  for (int t = 0; t < cd; ++t) {
    Mat dz = dual_of(cp.algebra.basis[t]);
    Vec c = legs_cod.solve(vec_op(dz));
    in_tensor = std::max(in_tensor, (legs * c - vec_op(dz)).norm());
    Mat lhs = Mat::Zero(big, big), rhs = Mat::Zero(big, big);
    for (int h = 0; h < n; ++h) {
      Mat zh = Mat::Zero(dk, dk);
      for (int i = 0; i < cd; ++i) zh += c(i * n + h) * cp.algebra.basis[i];
      lhs += kron(dual_of(zh), rho_op(g, h));
      rhs += kron(zh, kron(rho_op(g, h), rho_op(g, h)));
    }
    coassoc = std::max(coassoc, op_norm(lhs - rhs));
  }
  out.report.add("dual_lands_in_algebra_tensor_r", in_tensor);
  out.report.add("dual_coassociativity", coassoc);

  // Base condition: b_hat(alpha(chi_u)) = e(1 (x) beta_hat(chi_u))e =
  // rho_tilde(u), and kappa_hat(rho(u)) = rho(u).
  Mat dual_unit = dual_of(Mat::Identity(dk, dk));
  double base = 0;
  for (int u : g.units)
    base = std::max(base, op_norm(dual_of(cp.rho_basis[u]) -
                                  dual_unit * kron(Mat::Identity(dk, dk), rho_op(g, u))));
  out.report.add("dual_base_condition", base);

  // Double crossed product: gen{delta(A), delta(1)(1 (x) beta(N)')} versus
  // delta(1)(A (x) W(G))delta(1), with W(G) the commutant of the range
  // diagonals.
  std::vector<Mat> rdiag;
  for (int u : g.units) {
    Mat ru = Mat::Zero(n, n);
    for (int t = 0; t < n; ++t)
      if (g.tgt[t] == u) ru(t, t) = 1.0;
    rdiag.push_back(ru);
  }
  StarSubspace w = commutant(rdiag, n);
  auto compress = [&](const Mat& pi_blocks_unused, const Mat& wop, const AElem* a) {
    (void)pi_blocks_unused;
    Mat op = Mat::Zero(dk, dk);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (g.tgt[x] != g.tgt[y]) continue;
        if (std::abs(wop(x, y)) < 1e-15 && a != nullptr) continue;
        int ur = m.unit_slot(g.tgt[x]);
        int d = m.alg_dim(ur);
        Mat blk = a ? Mat(wop(x, y) * gns_rep(m, ur, (*a)[ur]))
                    : Mat(wop(x, y) * Mat::Identity(d, d));
        op.block(cp.carrier.offset[x], cp.carrier.offset[y], d, d) += blk;
      }
    return op;
  };
  std::vector<Mat> gens = cp.delta_basis;
  for (const Mat& wb : w.basis) gens.push_back(compress(Mat(), wb, nullptr));
  StarSubspace dc = generated_algebra(gens, dk);
  out.double_crossed_dim = dc.dim();
  std::vector<Mat> full;
  for (const AElem& a : module_basis(m))
    for (const Mat& wb : w.basis) full.push_back(compress(Mat(), wb, &a));
  out.report.add("double_crossed_identification", subspace_residual(dc, span_of(full, dk)));
  out.report.sort();
  return out;
}

ImplementingUnitary implementing_unitary(const GroupoidAction& act) {
  const VNModule& m = act.mod;
  CrossedCarrier car = CrossedCarrier::of(m);
  ImplementingUnitary out;
  out.u = Mat::Zero(car.dim, car.dim);
  double unitary = 0;
  for (int g = 0; g < m.g.n; ++g) {
    int d = m.alg_dim(m.unit_slot(m.g.tgt[g]));
    out.u.block(car.offset[g], car.offset[g], d, d) = act.maps[g];
    unitary = std::max(unitary, op_norm(Mat(act.maps[g].adjoint() * act.maps[g]) -
                                        Mat::Identity(d, d)));
  }
  out.report.add("implementing_blocks_unitary", unitary);
  double impl = 0;
  for (const AElem& a : module_basis(m))
    impl = std::max(impl, op_norm(delta_op(act, car, a) -
                                  out.u * source_op(act, car, a) * out.u.adjoint()));
  out.report.add("implementing_identity", impl);
  out.report.sort();
  return out;
}

void validate_fibered(const FiberedAction& fa) {
  const Groupoid& g = fa.g;
  for (int x = 0; x < fa.x_size; ++x)
    if (!g.is_unit(fa.fiber[x]))
      throw ActionError("NotAFiberedAction", "fiber label is not a unit");
  for (int x = 0; x < fa.x_size; ++x)
    for (int a = 0; a < g.n; ++a) {
      bool want = fa.fiber[x] == g.tgt[a];
      if ((fa.act[x][a] >= 0) != want)
        throw ActionError("NotAFiberedAction", "domain of <| is wrong");
      if (want && fa.fiber[fa.act[x][a]] != g.src[a])
        throw ActionError("NotAFiberedAction", "<| does not respect fibers");
    }
  for (int x = 0; x < fa.x_size; ++x)
    if (fa.act[x][fa.fiber[x]] != x) throw ActionError("NotAFiberedAction", "units must act trivially");
  for (auto [a, b] : g.composable_pairs())
    for (int x = 0; x < fa.x_size; ++x)
      if (fa.fiber[x] == g.tgt[a] && fa.act[fa.act[x][a]][b] != fa.act[x][g.at(a, b)])
        throw ActionError("NotAFiberedAction", "<| is not functorial");
}

void validate_fibered(const LeftFiberedAction& fa) {
  const Groupoid& g = fa.g;
  for (int x = 0; x < fa.x_size; ++x)
    if (!g.is_unit(fa.fiber[x]))
      throw ActionError("NotAFiberedAction", "fiber label is not a unit");
  for (int x = 0; x < fa.x_size; ++x)
    for (int a = 0; a < g.n; ++a) {
      bool want = fa.fiber[x] == g.src[a];
      if ((fa.act[x][a] >= 0) != want)
        throw ActionError("NotAFiberedAction", "domain of |> is wrong");
      if (want && fa.fiber[fa.act[x][a]] != g.tgt[a])
        throw ActionError("NotAFiberedAction", "|> does not respect fibers");
    }
  for (int x = 0; x < fa.x_size; ++x)
    if (fa.act[x][fa.fiber[x]] != x) throw ActionError("NotAFiberedAction", "units must act trivially");
  for (auto [a, b] : g.composable_pairs())
    for (int x = 0; x < fa.x_size; ++x)
      if (fa.fiber[x] == g.src[b] && fa.act[fa.act[x][b]][a] != fa.act[x][g.at(a, b)])
        throw ActionError("NotAFiberedAction", "|> is not functorial");
}

int FiberedConv::index(int x, int g) const {
  for (int i = 0; i < static_cast<int>(basis.size()); ++i)
    if (basis[i] == std::make_pair(x, g)) return i;
  return -1;
}

int FiberedConv::product(int i, int j) const {
  auto [x, g] = basis[i];
  auto [xp, gp] = basis[j];
  if (fa.act[x][g] != xp) return -1;
  if (!fa.g.defined(g, gp)) return -1;
  return index(x, fa.g.at(g, gp));
}

int FiberedConv::involution(int i) const {
  auto [x, g] = basis[i];
  return index(fa.act[x][g], fa.g.inv[g]);
}

Mat FiberedConv::right_rep(int i) const {
  auto [x, g] = basis[i];
  int nb = static_cast<int>(basis.size());
  Mat out = Mat::Zero(nb, nb);
  for (int a = 0; a < nb; ++a) {
    auto [x0, g0] = basis[a];
    if (fa.act[x0][g0] != x) continue;
    if (!fa.g.defined(g0, g)) continue;
    out(a, index(x0, fa.g.at(g0, g))) = 1.0;
  }
  return out;
}

Report FiberedConv::verify() const {
  int nb = static_cast<int>(basis.size());
  Report rep;
  double assoc = 0, invol = 0, anti = 0, rep_mult = 0, rep_star = 0;
  std::vector<Mat> rops(nb);
  for (int i = 0; i < nb; ++i) rops[i] = right_rep(i);
  for (int i = 0; i < nb; ++i) {
    invol = std::max(invol, involution(involution(i)) == i ? 0.0 : 1.0);
    rep_star = std::max(rep_star, op_norm(Mat(rops[i].adjoint()) - rops[involution(i)]));
    for (int j = 0; j < nb; ++j) {
      int ij = product(i, j);
      Mat expect = ij >= 0 ? rops[ij] : Mat(Mat::Zero(nb, nb));
      rep_mult = std::max(rep_mult, op_norm(rops[i] * rops[j] - expect));
      int want = ij >= 0 ? involution(ij) : -1;
      int got = involution(j) >= 0 && involution(i) >= 0 ? product(involution(j), involution(i)) : -1;
      anti = std::max(anti, want == got ? 0.0 : 1.0);
      for (int k = 0; k < nb; ++k) {
        int l = ij >= 0 ? product(ij, k) : -1;
        int jk = product(j, k);
        int r = jk >= 0 ? product(i, jk) : -1;
        assoc = std::max(assoc, l == r ? 0.0 : 1.0);
      }
    }
  }
  rep.add("conv_associative", assoc);
  rep.add("conv_involution_antihomomorphism", anti);
  rep.add("conv_involution_involutive", invol);
  rep.add("conv_rep_multiplicative", rep_mult);
  rep.add("conv_rep_star", rep_star);
  rep.sort();
  return rep;
}

FiberedConv fibered_conv(const FiberedAction& fa) {
  validate_fibered(fa);
  FiberedConv c;
  c.fa = fa;
  for (int x = 0; x < fa.x_size; ++x)
    for (int g = 0; g < fa.g.n; ++g)
      if (fa.fiber[x] == fa.g.tgt[g]) c.basis.emplace_back(x, g);
  return c;
}

Mat LeftFiberedConv::left_rep(int i) const {
  auto [y, k] = alg_basis[i];
  int nb = static_cast<int>(rep_basis.size());
  Mat out = Mat::Zero(nb, nb);
  auto idx = [&](int x, int g) {
    for (int a = 0; a < nb; ++a)
      if (rep_basis[a] == std::make_pair(x, g)) return a;
    return -1;
  };
  for (int a = 0; a < nb; ++a) {
    auto [x, g] = rep_basis[a];
    if (fa.g.tgt[k] != fa.g.tgt[g]) continue;
    if (fa.act[x][g] != y) continue;
    out(a, idx(x, fa.g.at(fa.g.inv[k], g))) = 1.0;
  }
  return out;
}

Report LeftFiberedConv::verify() const {
  int nb = static_cast<int>(alg_basis.size());
  auto idx = [&](int x, int g) {
    for (int a = 0; a < nb; ++a)
      if (alg_basis[a] == std::make_pair(x, g)) return a;
    return -1;
  };
  auto product = [&](int i, int j) {
    auto [y, k] = alg_basis[i];
    auto [yp, kp] = alg_basis[j];
    if (!fa.g.defined(k, kp)) return -1;
    if (fa.act[y][fa.g.inv[k]] != yp) return -1;
    return idx(y, fa.g.at(k, kp));
  };
  auto invol = [&](int i) {
    auto [y, k] = alg_basis[i];
    return idx(fa.act[y][fa.g.inv[k]], fa.g.inv[k]);
  };
  Report rep;
  double assoc = 0, ii = 0, rep_mult = 0, rep_star = 0;
  std::vector<Mat> lops(nb);
  for (int i = 0; i < nb; ++i) lops[i] = left_rep(i);
  int rd = static_cast<int>(rep_basis.size());
  for (int i = 0; i < nb; ++i) {
    ii = std::max(ii, invol(invol(i)) == i ? 0.0 : 1.0);
    rep_star = std::max(rep_star, op_norm(Mat(lops[i].adjoint()) - lops[invol(i)]));
    for (int j = 0; j < nb; ++j) {
      int p = product(i, j);
      Mat expect = p >= 0 ? lops[p] : Mat(Mat::Zero(rd, rd));
      rep_mult = std::max(rep_mult, op_norm(lops[i] * lops[j] - expect));
      for (int k = 0; k < nb; ++k) {
        int jk = product(j, k);
        int l = p >= 0 ? product(p, k) : -1;
        int r = jk >= 0 ? product(i, jk) : -1;
        assoc = std::max(assoc, l == r ? 0.0 : 1.0);
      }
    }
  }
  rep.add("conv_associative", assoc);
  rep.add("conv_involution_involutive", ii);
  rep.add("conv_rep_multiplicative", rep_mult);
  rep.add("conv_rep_star", rep_star);
  rep.sort();
  return rep;
}

LeftFiberedConv left_fibered_conv(const LeftFiberedAction& fa) {
  validate_fibered(fa);
  LeftFiberedConv c;
  c.fa = fa;
  for (int x = 0; x < fa.x_size; ++x)
    for (int g = 0; g < fa.g.n; ++g) {
      if (fa.fiber[x] == fa.g.tgt[g]) c.alg_basis.emplace_back(x, g);
      if (fa.fiber[x] == fa.g.src[g]) c.rep_basis.emplace_back(x, g);
    }
  return c;
}

GroupoidAction induced_action(const FiberedAction& fa) {
  validate_fibered(fa);
  GroupoidAction act;
  act.mod.g = fa.g;
  int nu = static_cast<int>(fa.g.units.size());
  std::vector<std::vector<int>> members(nu);
  for (int x = 0; x < fa.x_size; ++x)
    members[fa.g.unit_index(fa.fiber[x])].push_back(x);
  act.mod.blocks.resize(nu);
  for (int u = 0; u < nu; ++u) act.mod.blocks[u].assign(members[u].size(), 1);
  auto pos = [&](int u, int x) {
    for (int i = 0; i < static_cast<int>(members[u].size()); ++i)
      if (members[u][i] == x) return i;
    return -1;
  };
  act.maps.resize(fa.g.n);
  for (int g = 0; g < fa.g.n; ++g) {
    int ur = fa.g.unit_index(fa.g.tgt[g]), us = fa.g.unit_index(fa.g.src[g]);
    Mat m = Mat::Zero(static_cast<int>(members[ur].size()), static_cast<int>(members[us].size()));
    for (int i = 0; i < m.rows(); ++i) m(i, pos(us, fa.act[members[ur][i]][g])) = 1.0;
    act.maps[g] = m;
  }
  return act;
}

Report fibered_crossed_identification(const FiberedAction& fa) {
  GroupoidAction act = induced_action(fa);
  CrossedProduct cp = crossed_product(act);
  FiberedConv conv = fibered_conv(fa);
  Report rep = conv.verify();

  // Carrier position of the pair (x, g): the slot of x within the fiber of
  // r(g), offset by the component of g.
  const VNModule& m = act.mod;
  std::vector<std::vector<int>> members(m.fibers());
  for (int x = 0; x < fa.x_size; ++x) members[fa.g.unit_index(fa.fiber[x])].push_back(x);
  int nb = static_cast<int>(conv.basis.size());
  if (nb != cp.carrier.dim) throw ShapeMismatch("pair space vs crossed carrier");
  Mat p = Mat::Zero(cp.carrier.dim, nb);
  for (int i = 0; i < nb; ++i) {
    auto [x, g] = conv.basis[i];
    int ur = fa.g.unit_index(fa.g.tgt[g]);
    int slot = 0;
    while (members[ur][slot] != x) ++slot;
    p(cp.carrier.offset[g] + slot, i) = 1.0;
  }
  std::vector<Mat> image;
  for (int i = 0; i < nb; ++i) image.push_back(p * conv.right_rep(i) * p.transpose());
  rep.add("fibered_image_eq_crossed",
          subspace_residual(span_of(image, cp.carrier.dim), cp.algebra));
  rep.sort();
  return rep;
}

FiberedAction matchpair_right_action(const MatchPair& mp) {
  FiberedAction fa;
  fa.g = restricted_groupoid(mp.g, mp.h_ids);
  fa.x_size = static_cast<int>(mp.k_ids.size());
  fa.fiber.resize(fa.x_size);
  fa.act.assign(fa.x_size, std::vector<int>(fa.g.n, -1));
  std::vector<int> kpos(mp.g.n, -1);
  for (int i = 0; i < fa.x_size; ++i) kpos[mp.k_ids[i]] = i;
  for (int i = 0; i < fa.x_size; ++i) {
    int k = mp.k_ids[i];
    fa.fiber[i] = mp.g.src[k];  // unit ids are shared with the restriction
    for (int j = 0; j < fa.g.n; ++j) {
      int h = mp.h_ids[j];
      if (mp.g.src[k] == mp.g.tgt[h]) fa.act[i][j] = kpos[mp.act_right[k][h]];
    }
  }
  // Unit ids of the restricted groupoid differ from G's; relabel fibers.
  std::vector<int> local(mp.g.n, -1);
  for (int j = 0; j < fa.g.n; ++j) local[mp.h_ids[j]] = j;
  for (int i = 0; i < fa.x_size; ++i) fa.fiber[i] = local[fa.fiber[i]];
  validate_fibered(fa);
  return fa;
}

LeftFiberedAction matchpair_left_action(const MatchPair& mp) {
  LeftFiberedAction fa;
  fa.g = restricted_groupoid(mp.g, mp.k_ids);
  fa.x_size = static_cast<int>(mp.h_ids.size());
  fa.fiber.resize(fa.x_size);
  fa.act.assign(fa.x_size, std::vector<int>(fa.g.n, -1));
  std::vector<int> hpos(mp.g.n, -1);
  for (int i = 0; i < fa.x_size; ++i) hpos[mp.h_ids[i]] = i;
  std::vector<int> local(mp.g.n, -1);
  for (int j = 0; j < fa.g.n; ++j) local[mp.k_ids[j]] = j;
  for (int i = 0; i < fa.x_size; ++i) {
    int h = mp.h_ids[i];
    fa.fiber[i] = local[mp.g.tgt[h]];
    for (int j = 0; j < fa.g.n; ++j) {
      int k = mp.k_ids[j];
      if (mp.g.src[k] == mp.g.tgt[h]) fa.act[i][j] = hpos[mp.act_left[k][h]];
    }
  }
  validate_fibered(fa);
  return fa;
}

Mat matchpair_R(const MatchPair& mp, int k, int h) {
  const Groupoid& g = mp.g;
  Mat out = Mat::Zero(g.n, g.n);
  for (int x = 0; x < g.n; ++x)
    if (mp.p2[x] == k) out(x, g.at(x, h)) = 1.0;
  return out;
}

Mat matchpair_S(const MatchPair& mp, const Mpi& I, int k, int h) {
  const Groupoid& g = mp.g;
  LinearForm omega{basis_vec(g.n, g.at(k, h)), basis_vec(g.n, k)};
  return slice_left(I.matrix, g.n, g.n, omega);
}

Report matchpair_structures(const MatchPair& mp) {
  const Groupoid& g = mp.g;
  Mpi I = build_I_HK(mp);
  auto legs = leg_algebras(I);
  WeakHopf wr = extract_wha(I, Side::right);
  WeakHopf wl = extract_wha(I, Side::left);
  Report rep;

  int nc = static_cast<int>(mp.cells.size());
  std::vector<Mat> rops(nc), sops(nc);
  for (int i = 0; i < nc; ++i) {
    rops[i] = matchpair_R(mp, mp.cells[i].first, mp.cells[i].second);
    sops[i] = matchpair_S(mp, I, mp.cells[i].first, mp.cells[i].second);
  }
  rep.add("cells_span_s_hat", subspace_residual(span_of(rops, g.n), legs.second));
  rep.add("dual_cells_span_s", subspace_residual(span_of(sops, g.n), legs.first));

  auto rop_of = [&](Cell c) { return rops[mp.cell_index(c.first, c.second)]; };
  auto sop_of = [&](Cell c) { return sops[mp.cell_index(c.first, c.second)]; };

  double vprod = 0, vinv = 0, hprod = 0, hinv = 0;
  for (int i = 0; i < nc; ++i) {
    vinv = std::max(vinv, op_norm(Mat(rops[i].adjoint()) -
                                  rop_of(cell_vertical_inverse(mp, mp.cells[i]))));
    hinv = std::max(hinv, op_norm(Mat(sops[i].adjoint()) -
                                  sop_of(cell_horizontal_inverse(mp, mp.cells[i]))));
    for (int j = 0; j < nc; ++j) {
      auto v = box_vertical(mp, mp.cells[i], mp.cells[j]);
      Mat expv = v ? rop_of(*v) : Mat(Mat::Zero(g.n, g.n));
      vprod = std::max(vprod, op_norm(rops[i] * rops[j] - expv));
      auto hcomp = box_horizontal(mp, mp.cells[i], mp.cells[j]);
      Mat exph = hcomp ? sop_of(*hcomp) : Mat(Mat::Zero(g.n, g.n));
      hprod = std::max(hprod, op_norm(sops[i] * sops[j] - exph));
    }
  }
  rep.add("product_is_vertical_law", vprod);
  rep.add("star_is_vertical_inverse", vinv);
  rep.add("dual_product_is_horizontal_law", hprod);
  rep.add("dual_star_is_horizontal_inverse", hinv);

  auto total_inverse = [&](Cell c) {
    return Cell{g.inv[mp.act_right[c.first][c.second]], g.inv[mp.act_left[c.first][c.second]]};
  };

  double cop = 0, anti = 0, cou = 0, dcop = 0, danti = 0, dcou = 0;
  for (int i = 0; i < nc; ++i) {
    auto [k, h] = mp.cells[i];
    // Horizontal factorizations (k1, k1^{-1}k |> h) -|> (k1^{-1}k, h).
    Mat sum = Mat::Zero(g.n * g.n, g.n * g.n);
    for (int k1 : mp.k_ids) {
      if (g.tgt[k1] != g.tgt[k]) continue;
      int k2 = g.at(g.inv[k1], k);
      sum += kron(rop_of({k1, mp.act_left[k2][h]}), rop_of({k2, h}));
    }
    cop = std::max(cop, op_norm(wr.coprod_op(rops[i]) - sum));
    anti = std::max(anti, op_norm(wr.antipode_op(rops[i]) - rop_of(total_inverse(mp.cells[i]))));
    cou = std::max(cou, std::abs(wr.counit_of(rops[i]) - (k == g.tgt[h] ? 1.0 : 0.0)));

    // Vertical factorizations (k, h1) -v- (k <| h1, h2), h = h1 h2.
    Mat dsum = Mat::Zero(g.n * g.n, g.n * g.n);
    for (int h1 : mp.h_ids) {
      if (g.tgt[h1] != g.tgt[h]) continue;
      int h2 = g.at(g.inv[h1], h);
      if (!mp.in_h[h2]) continue;
      dsum += kron(sop_of({k, h1}), sop_of({mp.act_right[k][h1], h2}));
    }
    dcop = std::max(dcop, op_norm(wl.coprod_op(sops[i]) - dsum));
    danti = std::max(danti, op_norm(wl.antipode_op(sops[i]) - sop_of(total_inverse(mp.cells[i]))));
    dcou = std::max(dcou, std::abs(wl.counit_of(sops[i]) - (h == g.src[k] ? 1.0 : 0.0)));
  }
  rep.add("coproduct_is_horizontal_factorizations", cop);
  rep.add("antipode_is_cell_inverse", anti);
  rep.add("counit_marks_horizontal_units", cou);
  rep.add("dual_coproduct_is_vertical_factorizations", dcop);
  rep.add("dual_antipode_is_cell_inverse", danti);
  rep.add("dual_counit_marks_vertical_units", dcou);

  // Gamma o delta^H = (delta^H (x) delta^H) o Gamma_K on C(K), with
  // delta^H(chi_k) = R(k, s(k)).
  double basecop = 0;
  for (int k : mp.k_ids) {
    Mat dhk = rop_of({k, g.src[k]});
    Mat sum = Mat::Zero(g.n * g.n, g.n * g.n);
    for (int k1 : mp.k_ids)
      for (int k2 : mp.k_ids)
        if (g.defined(k1, k2) && g.at(k1, k2) == k)
          sum += kron(rop_of({k1, g.src[k1]}), rop_of({k2, g.src[k2]}));
    basecop = std::max(basecop, op_norm(wr.coprod_op(dhk) - sum));
  }
  rep.add("base_embedding_intertwines_coproducts", basecop);

  // 1 (x)_r rho(h) = Sigma_{s(k) = r(h)} R(k, h).
  double rho_emb = 0;
  for (int h : mp.h_ids) {
    Mat sum = Mat::Zero(g.n, g.n);
    for (int k : mp.k_ids)
      if (g.src[k] == g.tgt[h]) sum += rop_of({k, h});
    rho_emb = std::max(rho_emb, op_norm(sum - rho_op(g, h)));
  }
  rep.add("rho_embedding", rho_emb);

  // R^delta of the fibered action of H on K matches R(k, h) under the
  // factorization bijection (k, h) -> kh.
  {
    FiberedAction fa = matchpair_right_action(mp);
    FiberedConv conv = fibered_conv(fa);
    int nb = static_cast<int>(conv.basis.size());
    Mat u = Mat::Zero(g.n, nb);
    for (int i = 0; i < nb; ++i) {
      auto [xk, xh] = conv.basis[i];
      u(g.at(mp.k_ids[xk], mp.h_ids[xh]), i) = 1.0;
    }
    double ident = 0;
    for (int i = 0; i < nb; ++i) {
      auto [xk, xh] = conv.basis[i];
      ident = std::max(ident, op_norm(u * conv.right_rep(i) * u.transpose() -
                                      rop_of({mp.k_ids[xk], mp.h_ids[xh]})));
    }
    rep.add("fibered_rep_identification", ident);
    rep.merge(conv.verify(), "right_");
  }

  // L^gamma of the left action of K on H matches the S-side slices:
  // S(k, h) = L^gamma(chi_{(k |> h, k)}) under (h, k) -> kh on the carrier.
  {
    LeftFiberedAction fa = matchpair_left_action(mp);
    LeftFiberedConv conv = left_fibered_conv(fa);
    int nr = static_cast<int>(conv.rep_basis.size());
    Mat u = Mat::Zero(g.n, nr);
    for (int i = 0; i < nr; ++i) {
      auto [xh, xk] = conv.rep_basis[i];
      u(g.at(mp.k_ids[xk], mp.h_ids[xh]), i) = 1.0;
    }
    auto alg_index = [&](int y, int k) {
      for (int a = 0; a < static_cast<int>(conv.alg_basis.size()); ++a)
        if (conv.alg_basis[a] == std::make_pair(y, k)) return a;
      return -1;
    };
    double ident = 0;
    std::vector<int> hpos(g.n, -1), kpos(g.n, -1);
    for (int i = 0; i < static_cast<int>(mp.h_ids.size()); ++i) hpos[mp.h_ids[i]] = i;
    for (int i = 0; i < static_cast<int>(mp.k_ids.size()); ++i) kpos[mp.k_ids[i]] = i;
    for (int i = 0; i < nc; ++i) {
      auto [k, h] = mp.cells[i];
      int a = alg_index(hpos[mp.act_left[k][h]], kpos[k]);
      ident = std::max(ident, op_norm(u * conv.left_rep(a) * u.transpose() - sops[i]));
    }
    rep.add("dual_fibered_rep_identification", ident);
    rep.merge(conv.verify(), "left_");
  }

  rep.sort();
  return rep;
}

}  // namespace fqg
