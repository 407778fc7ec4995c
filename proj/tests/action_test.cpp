#include "instances.hpp"

#include <doctest.h>

using namespace fqg;
using namespace fqg::testing;

namespace {

RowVec haar_of(const Groupoid& g) {
  auto [cg, rg] = commutative_oracle(g);
  return haar_solve(cg);
}

}  // namespace

TEST_CASE("module coordinates round trip") {
  VNModule m;
  m.g = z2();
  m.blocks = {{2, 1}};
  CHECK(m.rep_dim(0) == 3);
  CHECK(m.alg_dim(0) == 5);
  Mat x = Mat::Random(3, 3);
  // Project onto the block structure first.
  Mat blk = m.fiber_from_coords(0, m.fiber_coords(0, x));
  CHECK(op_norm(blk - m.fiber_from_coords(0, m.fiber_coords(0, blk))) < kTol);
}

TEST_CASE("action validation accepts the instances and rejects junk") {
  for (const GroupoidAction& act :
       {z2_flip_action(), z2_ad_sigma_x_action(), z2_trivial_m2_action(),
        identity_action(p2())})
    CHECK(validate_action(act).pass());
  GroupoidAction bad = z2_flip_action();
  bad.maps[1](0, 0) = 2.0;  // no longer multiplicative
  CHECK_FALSE(validate_action(bad).pass());
}

TEST_CASE("delta satisfies the quantum groupoid action axioms") {
  for (const GroupoidAction& act :
       {z2_flip_action(), z2_ad_sigma_x_action(), z2_trivial_m2_action(),
        identity_action(p2())}) {
    Report rep = delta_report(act);
    for (const auto& c : rep.checks) {
      CAPTURE(c.axiom);
      CHECK(c.residual < kTol);
    }
  }
}

TEST_CASE("fixed point algebras have the expected dimensions") {
  CHECK(fixed_points(z2_flip_action()).sub.dim() == 1);       // constants
  CHECK(fixed_points(z2_ad_sigma_x_action()).sub.dim() == 2); // span{1, sigma_x}
  CHECK(fixed_points(z2_trivial_m2_action()).sub.dim() == 4); // all of M2
  CHECK(fixed_points(identity_action(p2())).sub.dim() == 1);  // diagonal constants
  for (const GroupoidAction& act : {z2_flip_action(), z2_ad_sigma_x_action()})
    CHECK(fixed_points(act).report.pass());
}

TEST_CASE("conditional expectation onto the fixed points") {
  for (const GroupoidAction& act :
       {z2_flip_action(), z2_ad_sigma_x_action(), identity_action(p2())}) {
    TDelta t = t_delta(act, haar_of(act.mod.g));
    for (const auto& c : t.report.checks) {
      CAPTURE(c.axiom);
      CHECK(c.residual < kTol);
    }
  }
}

TEST_CASE("crossed product dimensions and decomposition") {
  struct Case {
    GroupoidAction act;
    int dim;
  };
  for (const Case& c : {Case{z2_flip_action(), 4}, Case{z2_ad_sigma_x_action(), 8},
                        Case{z2_trivial_m2_action(), 8}, Case{identity_action(p2()), 4}}) {
    CrossedProduct cp = crossed_product(c.act);
    CHECK(cp.algebra.dim() == c.dim);
    CHECK(cp.expected_dim == c.dim);
    CHECK(cp.report.pass());
  }
}

TEST_CASE("flip crossed product is a factor") {
  // C^2 x| Z/2 = M_2: the algebra has trivial center.
  CrossedProduct cp = crossed_product(z2_flip_action());
  CHECK(center(cp.algebra).dim() == 1);
}

TEST_CASE("outerness verdicts") {
  OuterResult ad = outer_test(z2_ad_sigma_x_action());
  CHECK_FALSE(ad.outer);
  CHECK(ad.relative_commutant_dim == 2);
  REQUIRE(ad.outer_inner_criterion.has_value());
  CHECK_FALSE(*ad.outer_inner_criterion);
  CHECK(ad.report.pass());
  CHECK(ad.witnesses.size() == 1);

  OuterResult tr = outer_test(z2_trivial_m2_action());
  CHECK_FALSE(tr.outer);
  REQUIRE(tr.outer_inner_criterion.has_value());
  CHECK(tr.report.pass());

  // A principal groupoid has no isotropy, so every action is outer.
  OuterResult pr = outer_test(identity_action(p2()));
  CHECK(pr.outer);
  REQUIRE(pr.outer_inner_criterion.has_value());
  CHECK(*pr.outer_inner_criterion);
  CHECK(pr.report.pass());

  // The flip action is outer: the isotropy element acts nontrivially on
  // the commutative fiber, so it cannot be inner.
  OuterResult fl = outer_test(z2_flip_action());
  CHECK(fl.outer);
  CHECK(fl.report.pass());
}

TEST_CASE("dual coaction and the double crossed product") {
  struct Case {
    GroupoidAction act;
    int dc_dim;
  };
  // dim A * |G|^2 for the group cases; for P2 the range-fiber support
  // condition cuts the 2 x 16 down to 8.
  for (const Case& c : {Case{z2_flip_action(), 8}, Case{identity_action(p2()), 8},
                        Case{identity_action(z2()), 4}}) {
    CrossedProduct cp = crossed_product(c.act);
    DualCoaction dc = dual_coaction(cp);
    for (const auto& chk : dc.report.checks) {
      CAPTURE(chk.axiom);
      CHECK(chk.residual < kTol);
    }
    CHECK(dc.double_crossed_dim == c.dc_dim);
  }
}

TEST_CASE("implementing unitary realizes delta from the source amplification") {
  for (const GroupoidAction& act :
       {z2_flip_action(), z2_ad_sigma_x_action(), identity_action(p2())}) {
    ImplementingUnitary iu = implementing_unitary(act);
    CHECK(iu.report.pass());
    CHECK(is_unitary(iu.u));
  }
}

TEST_CASE("fibered convolution algebras and their representations") {
  // The pair groupoid acting on its own arrow set by right translation.
  Groupoid g = p2();
  FiberedAction fa;
  fa.g = g;
  fa.x_size = g.n;
  fa.fiber = g.src;
  fa.act.assign(g.n, std::vector<int>(g.n, -1));
  for (int x = 0; x < g.n; ++x)
    for (int a = 0; a < g.n; ++a)
      if (g.src[x] == g.tgt[a]) fa.act[x][a] = g.at(x, a);
  FiberedConv conv = fibered_conv(fa);
  CHECK(conv.verify().pass());
  CHECK(fibered_crossed_identification(fa).pass());
}

TEST_CASE("induced action of a fibered set is a valid module action") {
  FiberedAction fa = matchpair_right_action(s3_match_pair());
  GroupoidAction act = induced_action(fa);
  CHECK(validate_action(act).pass());
  CHECK(fibered_crossed_identification(fa).pass());
}
