#ifndef FQG_GROUPOID_HPP
#define FQG_GROUPOID_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fqg {

/// Structured error thrown by validation routines; `kind` is a stable
/// machine-readable tag (e.g. "NonAssociative", "FactorizationMissing").
struct GroupoidError : std::runtime_error {
  std::string kind;
  GroupoidError(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

/// Finite groupoid on dense integer ids 0..n-1.
///
/// The multiplication table stores -1 for undefined products; mul[x][y] is
/// defined exactly when src[x] == tgt[y]. Units are listed explicitly and
/// are element ids themselves. Instances are immutable after validation.
struct Groupoid {
  int n = 0;
  std::vector<int> units;              // element ids of G^0
  std::vector<int> src, tgt, inv;      // per element
  std::vector<std::vector<int>> mul;   // -1 = undefined

  bool defined(int x, int y) const { return mul[x][y] >= 0; }

  int at(int x, int y) const {
    int z = mul[x][y];
    if (z < 0) throw GroupoidError("PartialityMismatch",
                                   "product (" + std::to_string(x) + "," + std::to_string(y) + ") undefined");
    return z;
  }

  bool is_unit(int x) const {
    for (int u : units)
      if (u == x) return true;
    return false;
  }

  /// Position of unit u in the `units` list.
  int unit_index(int u) const;

  std::vector<std::pair<int, int>> composable_pairs() const;

  /// Elements with src == u (the fiber G_u) / tgt == u (the fiber G^u).
  std::vector<int> src_fiber(int u) const;
  std::vector<int> tgt_fiber(int u) const;
};

/// Checks every groupoid axiom on the raw tables and returns the value,
/// or throws GroupoidError naming the first violated axiom.
Groupoid validate(Groupoid raw);

Groupoid unit_groupoid();
Groupoid pair_groupoid(int k);

/// Group with multiplication table `table` (associativity is checked),
/// viewed as a one-unit groupoid. The identity is located automatically.
Groupoid group_groupoid(const std::vector<std::vector<int>>& table);

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b);

/// Transitive groupoid X x X x G on k points over the group `table`.
/// Element (i,j,g) has id (i*k + j)*|G| + g.
Groupoid transitive_groupoid(int k, const std::vector<std::vector<int>>& table);

/// Multiplication table of the symmetric group on `letters` letters
/// (elements enumerated in lexicographic one-line order, id 0 = identity).
std::vector<std::vector<int>> symmetric_group_table(int letters);

/// Isotropic subgroupoid { h : s(h) = r(h) } with its decomposition into
/// the isotropy groups G^u_u (one bucket per unit, same order as G.units).
struct IsoSubgroupoid {
  std::vector<int> elements;
  std::vector<std::vector<int>> by_unit;
};
IsoSubgroupoid iso_subgroupoid(const Groupoid& g);

/// A validated match pair (H, K) of subgroupoids of G: G = HK with unique
/// factorization g = p1(g) p2(g), middle map m = s(p1) = r(p2), and the
/// mutual actions defined by kh = (k |> h)(k <| h).
struct MatchPair {
  Groupoid g;
  std::vector<int> h_ids, k_ids;
  std::vector<char> in_h, in_k;        // membership masks
  std::vector<int> p1, p2, m;          // per element of G
  std::vector<std::vector<int>> act_left;   // act_left[k][h]  = k |> h, -1 undefined
  std::vector<std::vector<int>> act_right;  // act_right[k][h] = k <| h, -1 undefined
  std::vector<std::pair<int, int>> cells;   // (k,h) with s(k) = r(h)

  bool cell_ok(int k, int h) const { return in_k[k] && in_h[h] && g.src[k] == g.tgt[h]; }
  int cell_index(int k, int h) const;
};

MatchPair match_pair(const Groupoid& g, std::vector<int> h_ids, std::vector<int> k_ids);

/// Double-groupoid cell products on K_s x_r H. The horizontal product
/// (k,h) -|> (k',h') = (kk', h') requires h = k' |> h'; the vertical
/// product (k,h) -v- (k',h') = (k, hh') requires k' = k <| h. Returns
/// nullopt when the pair is not composable for that law.
using Cell = std::pair<int, int>;
std::optional<Cell> box_horizontal(const MatchPair& mp, Cell a, Cell b);
std::optional<Cell> box_vertical(const MatchPair& mp, Cell a, Cell b);
Cell cell_horizontal_inverse(const MatchPair& mp, Cell a);
Cell cell_vertical_inverse(const MatchPair& mp, Cell a);

}  // namespace fqg

#endif
