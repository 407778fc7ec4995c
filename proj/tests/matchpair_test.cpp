#include "instances.hpp"

#include <doctest.h>

using namespace fqg;
using namespace fqg::testing;

TEST_CASE("match pair structures on S3") {
  MatchPair mp = s3_match_pair();
  Report rep = matchpair_structures(mp);
  for (const auto& c : rep.checks) {
    CAPTURE(c.axiom);
    CHECK(c.residual < kTol);
  }
}

TEST_CASE("match pair structures on the degenerate pairs") {
  for (const Groupoid& g : {z2(), p2()}) {
    for (MatchPair mp : {degenerate_pair_h(g), degenerate_pair_k(g)}) {
      Report rep = matchpair_structures(mp);
      CAPTURE(g.n);
      CAPTURE(mp.h_ids.size());
      for (const auto& c : rep.checks) {
        CAPTURE(c.axiom);
        CHECK(c.residual < kTol);
      }
    }
  }
}

TEST_CASE("antipode in the groupoid picture sends chi_g to chi_{g inverse}") {
  MatchPair mp = s3_match_pair();
  const Groupoid& g = mp.g;
  Mpi ii = build_I_HK(mp);
  WeakHopf w = extract_wha(ii, Side::right);
  // (k, h) -> kh is a bijection of the cells with G; under it R(chi_g) is
  // the cell operator, and the antipode must act as g -> g^{-1}.
  auto cell_of = [&](int x) {
    for (auto [k, h] : mp.cells)
      if (g.at(k, h) == x) return Cell{k, h};
    REQUIRE(false);
    return Cell{-1, -1};
  };
  for (int x = 0; x < g.n; ++x) {
    Cell c = cell_of(x), ci = cell_of(g.inv[x]);
    Mat lhs = w.antipode_op(matchpair_R(mp, c.first, c.second));
    Mat rhs = matchpair_R(mp, ci.first, ci.second);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < kTol);
  }
}

TEST_CASE("counit in the groupoid picture marks H") {
  MatchPair mp = s3_match_pair();
  const Groupoid& g = mp.g;
  WeakHopf w = extract_wha(build_I_HK(mp), Side::right);
  for (auto [k, h] : mp.cells) {
    double expect = mp.in_h[g.at(k, h)] ? 1.0 : 0.0;
    CHECK(std::abs(w.counit_of(matchpair_R(mp, k, h)) - expect) < kTol);
  }
}

TEST_CASE("left and right match pair actions are mutually compatible") {
  MatchPair mp = s3_match_pair();
  const Groupoid& g = mp.g;
  // (k k') |> h = k |> (k' |> h) and k <| (h h') = (k <| h) <| h'.
  for (auto [k, h] : mp.cells) {
    for (int k1 : mp.k_ids)
      if (g.defined(k1, k))
        CHECK(mp.act_left[g.at(k1, k)][h] == mp.act_left[k1][mp.act_left[k][h]]);
    for (int h2 : mp.h_ids)
      if (g.defined(h, h2))
        CHECK(mp.act_right[k][g.at(h, h2)] == mp.act_right[mp.act_right[k][h]][h2]);
  }
}
