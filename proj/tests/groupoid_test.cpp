#include "instances.hpp"

#include <doctest.h>

using namespace fqg;
using namespace fqg::testing;

TEST_CASE("validate rejects a broken inverse") {
  Groupoid g = z2();
  g.inv[1] = 0;
  CHECK_THROWS_AS(validate(g), GroupoidError);
}

TEST_CASE("validate rejects a non-associative table") {
  // Left-translation tables of Z/3 with one product redirected.
  Groupoid g = group_groupoid({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  g.mul[1][1] = 1;
  CHECK_THROWS_AS(validate(g), GroupoidError);
}

TEST_CASE("pair groupoid shape") {
  Groupoid g = p3();
  CHECK(g.n == 9);
  CHECK(g.units.size() == 3);
  for (int x = 0; x < g.n; ++x) {
    CHECK(g.at(x, g.inv[x]) == g.tgt[x]);  // tgt stores the unit's element id
    for (int y = 0; y < g.n; ++y)
      CHECK((g.mul[x][y] >= 0) == (g.src[x] == g.tgt[y]));
  }
}

TEST_CASE("disjoint union keeps both components") {
  Groupoid g = z2_sqcup_z2();
  CHECK(g.n == 4);
  CHECK(g.units.size() == 2);
  CHECK_FALSE(g.defined(0, 2));
  CHECK_FALSE(g.defined(1, 3));
}

TEST_CASE("transitive groupoid on 2 points over Z/2") {
  Groupoid g = transitive_groupoid(2, {{0, 1}, {1, 0}});
  CHECK(g.n == 8);
  CHECK(g.units.size() == 2);
  IsoSubgroupoid iso = iso_subgroupoid(g);
  CHECK(iso.elements.size() == 4);
}

TEST_CASE("s3 match pair factorizations") {
  MatchPair mp = s3_match_pair();
  const Groupoid& g = mp.g;
  CHECK(mp.cells.size() == 6);
  for (int x = 0; x < g.n; ++x) {
    CHECK(mp.in_h[mp.p1[x]]);
    CHECK(mp.in_k[mp.p2[x]]);
    CHECK(g.at(mp.p1[x], mp.p2[x]) == x);
  }
  // kh = (k |> h)(k <| h) for every cell.
  for (auto [k, h] : mp.cells)
    CHECK(g.at(k, h) == g.at(mp.act_left[k][h], mp.act_right[k][h]));
}

TEST_CASE("<(01)>, <(02)> is not a match pair of S3") {
  CHECK_THROWS_AS(match_pair(s3(), {0, 2}, {0, 5}), GroupoidError);
}

TEST_CASE("degenerate match pairs exist for any groupoid") {
  for (const Groupoid& g : {z2(), p2()}) {
    MatchPair a = degenerate_pair_h(g);
    MatchPair b = degenerate_pair_k(g);
    CHECK(static_cast<int>(a.cells.size()) == g.n);
    CHECK(static_cast<int>(b.cells.size()) == g.n);
  }
}

TEST_CASE("cell products form a double groupoid") {
  MatchPair mp = s3_match_pair();
  auto cells = mp.cells;
  int n = static_cast<int>(cells.size());
  // Associativity of both laws, on all defined triples.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        auto hij = box_horizontal(mp, cells[i], cells[j]);
        auto hjk = box_horizontal(mp, cells[j], cells[k]);
        auto l = hij ? box_horizontal(mp, *hij, cells[k]) : std::optional<Cell>{};
        auto r = hjk ? box_horizontal(mp, cells[i], *hjk) : std::optional<Cell>{};
        CHECK(l == r);
        auto vij = box_vertical(mp, cells[i], cells[j]);
        auto vjk = box_vertical(mp, cells[j], cells[k]);
        auto vl = vij ? box_vertical(mp, *vij, cells[k]) : std::optional<Cell>{};
        auto vr = vjk ? box_vertical(mp, cells[i], *vjk) : std::optional<Cell>{};
        CHECK(vl == vr);
      }
  // Inverses compose to cells that are units for the respective law.
  for (const Cell& c : cells) {
    auto h = box_horizontal(mp, c, cell_horizontal_inverse(mp, c));
    REQUIRE(h.has_value());
    CHECK(mp.g.is_unit(h->first));
    auto v = box_vertical(mp, c, cell_vertical_inverse(mp, c));
    REQUIRE(v.has_value());
    CHECK(mp.g.is_unit(v->second));
  }
}
