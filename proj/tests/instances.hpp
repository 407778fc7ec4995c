#ifndef FQG_TEST_INSTANCES_HPP
#define FQG_TEST_INSTANCES_HPP

#include "fqg/action.hpp"

#include <vector>

namespace fqg::testing {

inline Groupoid z2() { return group_groupoid({{0, 1}, {1, 0}}); }
inline Groupoid p2() { return pair_groupoid(2); }
inline Groupoid p3() { return pair_groupoid(3); }
inline Groupoid z2_sqcup_z2() { return disjoint_union(z2(), z2()); }
inline Groupoid s3() { return group_groupoid(symmetric_group_table(3)); }

/// S3 elements in one-line lexicographic order: 0=id, 1=(12), 2=(01),
/// 3=(012), 4=(021), 5=(02). H = <(01)> and K = <(012)> give S3 = HK.
inline MatchPair s3_match_pair() { return match_pair(s3(), {0, 2}, {0, 3, 4}); }

/// Degenerate pairs: every g factors as g * unit resp. unit * g.
inline MatchPair degenerate_pair_h(const Groupoid& g) {
  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  return match_pair(g, all, g.units);
}
inline MatchPair degenerate_pair_k(const Groupoid& g) {
  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  return match_pair(g, g.units, all);
}

/// Z/2 flipping the two points of C^2 (one unit, blocks {1,1}).
inline GroupoidAction z2_flip_action() {
  GroupoidAction act;
  act.mod.g = z2();
  act.mod.blocks = {{1, 1}};
  act.maps.resize(2);
  act.maps[0] = Mat::Identity(2, 2);
  Mat f = Mat::Zero(2, 2);
  f(0, 1) = f(1, 0) = 1.0;
  act.maps[1] = f;
  return act;
}

/// Z/2 acting on M_2 by Ad(sigma_x) (inner) or trivially.
inline GroupoidAction z2_ad_sigma_x_action() {
  GroupoidAction act;
  act.mod.g = z2();
  act.mod.blocks = {{2}};
  Mat sx = Mat::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  Mat m(4, 4);
  auto& mod = act.mod;
  auto basis = mod.fiber_basis(0);
  for (int k = 0; k < 4; ++k) m.col(k) = mod.fiber_coords(0, Mat(sx * basis[k] * sx));
  act.maps = {Mat::Identity(4, 4), m};
  return act;
}

inline GroupoidAction z2_trivial_m2_action() {
  GroupoidAction act;
  act.mod.g = z2();
  act.mod.blocks = {{2}};
  act.maps = {Mat::Identity(4, 4), Mat::Identity(4, 4)};
  return act;
}

}  // namespace fqg::testing

#endif
