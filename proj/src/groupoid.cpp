#include "fqg/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace fqg {

namespace {

std::string elt(int x) { return std::to_string(x); }

}  // namespace

int Groupoid::unit_index(int u) const {
  for (size_t i = 0; i < units.size(); ++i)
    if (units[i] == u) return static_cast<int>(i);
  throw GroupoidError("BadUnit", elt(u) + " is not a unit");
}

std::vector<std::pair<int, int>> Groupoid::composable_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (src[x] == tgt[y]) out.emplace_back(x, y);
  return out;
}

std::vector<int> Groupoid::src_fiber(int u) const {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (src[x] == u) out.push_back(x);
  return out;
}

std::vector<int> Groupoid::tgt_fiber(int u) const {
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (tgt[x] == u) out.push_back(x);
  return out;
}

Groupoid validate(Groupoid raw) {
  const int n = raw.n;
  if (n <= 0) throw GroupoidError("BadUnit", "empty groupoid");
  auto in_range = [n](int x) { return 0 <= x && x < n; };
  if (static_cast<int>(raw.src.size()) != n || static_cast<int>(raw.tgt.size()) != n ||
      static_cast<int>(raw.inv.size()) != n || static_cast<int>(raw.mul.size()) != n)
    throw GroupoidError("BadUnit", "table sizes disagree with element count");
  for (int x = 0; x < n; ++x) {
    if (static_cast<int>(raw.mul[x].size()) != n)
      throw GroupoidError("BadUnit", "mul row " + elt(x) + " has wrong length");
    if (!in_range(raw.src[x]) || !in_range(raw.tgt[x]) || !in_range(raw.inv[x]))
      throw GroupoidError("BadUnit", "index out of range at element " + elt(x));
  }
  if (raw.units.empty()) throw GroupoidError("BadUnit", "no units listed");

  std::vector<char> is_unit(n, 0);
  for (int u : raw.units) {
    if (!in_range(u)) throw GroupoidError("BadUnit", elt(u) + " out of range");
    is_unit[u] = 1;
  }
  // units are idempotent fixed points
  for (int u : raw.units) {
    if (raw.src[u] != u || raw.tgt[u] != u)
      throw GroupoidError("BadUnit", "unit " + elt(u) + " has src/tgt != itself");
    if (raw.mul[u][u] != u)
      throw GroupoidError("BadUnit", "unit " + elt(u) + " is not idempotent");
  }
  // src/tgt land in units
  for (int x = 0; x < n; ++x)
    if (!is_unit[raw.src[x]] || !is_unit[raw.tgt[x]])
      throw GroupoidError("BadUnit", "src/tgt of " + elt(x) + " is not a listed unit");

  // partiality: mul[x][y] defined iff src(x) = tgt(y); then src/tgt compose
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int z = raw.mul[x][y];
      const bool should = raw.src[x] == raw.tgt[y];
      if (should != (z >= 0))
        throw GroupoidError("PartialityMismatch",
                            "(" + elt(x) + "," + elt(y) + ") defined=" + (z >= 0 ? "yes" : "no"));
      if (z >= 0) {
        if (!in_range(z)) throw GroupoidError("PartialityMismatch", "product out of range");
        if (raw.src[z] != raw.src[y] || raw.tgt[z] != raw.tgt[x])
          throw GroupoidError("PartialityMismatch",
                              "src/tgt of product (" + elt(x) + "," + elt(y) + ") wrong");
      }
    }

  // unit absorption
  for (int x = 0; x < n; ++x)
    if (raw.mul[raw.tgt[x]][x] != x || raw.mul[x][raw.src[x]] != x)
      throw GroupoidError("BadUnit", "unit absorption fails at " + elt(x));

  // inverse laws
  for (int x = 0; x < n; ++x) {
    const int xi = raw.inv[x];
    if (raw.src[xi] != raw.tgt[x] || raw.tgt[xi] != raw.src[x] || raw.inv[xi] != x)
      throw GroupoidError("BadInverse", elt(x));
    if (raw.mul[x][xi] != raw.tgt[x] || raw.mul[xi][x] != raw.src[x])
      throw GroupoidError("BadInverse", elt(x));
  }

  // associativity over all triples with defined products
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (raw.mul[x][y] < 0) continue;
      for (int z = 0; z < n; ++z) {
        if (raw.mul[y][z] < 0) continue;
        if (raw.mul[raw.mul[x][y]][z] != raw.mul[x][raw.mul[y][z]])
          throw GroupoidError("NonAssociative", "(" + elt(x) + "," + elt(y) + "," + elt(z) + ")");
      }
    }
  return raw;
}

Groupoid unit_groupoid() {
  Groupoid g;
  g.n = 1;
  g.units = {0};
  g.src = g.tgt = g.inv = {0};
  g.mul = {{0}};
  return validate(std::move(g));
}

Groupoid pair_groupoid(int k) {
  if (k < 1) throw GroupoidError("BadUnit", "pair groupoid needs k >= 1");
  Groupoid g;
  g.n = k * k;
  auto id = [k](int i, int j) { return i * k + j; };
  g.src.resize(g.n);
  g.tgt.resize(g.n);
  g.inv.resize(g.n);
  g.mul.assign(g.n, std::vector<int>(g.n, -1));
  for (int i = 0; i < k; ++i) {
    g.units.push_back(id(i, i));
    for (int j = 0; j < k; ++j) {
      g.src[id(i, j)] = id(j, j);
      g.tgt[id(i, j)] = id(i, i);
      g.inv[id(i, j)] = id(j, i);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) g.mul[id(i, j)][id(j, l)] = id(i, l);
  return validate(std::move(g));
}

Groupoid group_groupoid(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw GroupoidError("NotAGroup", "empty table");
  // locate the identity
  int e = -1;
  for (int c = 0; c < n; ++c) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
    if (ok) { e = c; break; }
  }
  if (e < 0) throw GroupoidError("NotAGroup", "no identity element");
  Groupoid g;
  g.n = n;
  g.units = {e};
  g.src.assign(n, e);
  g.tgt.assign(n, e);
  g.inv.assign(n, -1);
  g.mul = table;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (table[x][y] == e) g.inv[x] = y;
    if (g.inv[x] < 0) throw GroupoidError("NotAGroup", "element " + elt(x) + " has no inverse");
  }
  try {
    return validate(std::move(g));
  } catch (const GroupoidError& err) {
    throw GroupoidError("NotAGroup", err.what());
  }
}

Groupoid disjoint_union(const Groupoid& a, const Groupoid& b) {
  Groupoid g;
  g.n = a.n + b.n;
  const int off = a.n;
  g.src = a.src;
  g.tgt = a.tgt;
  g.inv = a.inv;
  for (int x = 0; x < b.n; ++x) {
    g.src.push_back(b.src[x] + off);
    g.tgt.push_back(b.tgt[x] + off);
    g.inv.push_back(b.inv[x] + off);
  }
  g.units = a.units;
  for (int u : b.units) g.units.push_back(u + off);
  g.mul.assign(g.n, std::vector<int>(g.n, -1));
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) g.mul[x][y] = a.mul[x][y];
  for (int x = 0; x < b.n; ++x)
    for (int y = 0; y < b.n; ++y)
      if (b.mul[x][y] >= 0) g.mul[x + off][y + off] = b.mul[x][y] + off;
  return validate(std::move(g));
}

Groupoid transitive_groupoid(int k, const std::vector<std::vector<int>>& table) {
  Groupoid base = group_groupoid(table);  // validates the group
  const int m = base.n, e = base.units[0];
  Groupoid g;
  g.n = k * k * m;
  auto id = [k, m](int i, int j, int a) { return (i * k + j) * m + a; };
  g.src.resize(g.n);
  g.tgt.resize(g.n);
  g.inv.resize(g.n);
  g.mul.assign(g.n, std::vector<int>(g.n, -1));
  for (int i = 0; i < k; ++i) {
    g.units.push_back(id(i, i, e));
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < m; ++a) {
        g.src[id(i, j, a)] = id(j, j, e);
        g.tgt[id(i, j, a)] = id(i, i, e);
        g.inv[id(i, j, a)] = id(j, i, base.inv[a]);
      }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            g.mul[id(i, j, a)][id(j, l, b)] = id(i, l, table[a][b]);
  return validate(std::move(g));
}

std::vector<std::vector<int>> symmetric_group_table(int letters) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(letters);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  auto find = [&](const std::vector<int>& q) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == q) return i;
    return -1;
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> q(letters);
      for (int x = 0; x < letters; ++x) q[x] = perms[i][perms[j][x]];
      table[i][j] = find(q);
    }
  return table;
}

IsoSubgroupoid iso_subgroupoid(const Groupoid& g) {
  IsoSubgroupoid out;
  out.by_unit.resize(g.units.size());
  for (int x = 0; x < g.n; ++x)
    if (g.src[x] == g.tgt[x]) {
      out.elements.push_back(x);
      out.by_unit[g.unit_index(g.src[x])].push_back(x);
    }
  return out;
}

int MatchPair::cell_index(int k, int h) const {
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == std::make_pair(k, h)) return static_cast<int>(i);
  throw GroupoidError("NotComposable", "(" + elt(k) + "," + elt(h) + ") is not a cell");
}

namespace {

void check_subgroupoid(const Groupoid& g, const std::vector<int>& ids, const char* name) {
  std::vector<char> in(g.n, 0);
  for (int x : ids) in[x] = 1;
  for (int x : ids) {
    if (!in[g.inv[x]])
      throw GroupoidError("NotSubgroupoid", std::string(name) + " not closed under inverse at " + elt(x));
    if (!in[g.src[x]] || !in[g.tgt[x]])
      throw GroupoidError("NotSubgroupoid", std::string(name) + " misses a unit of " + elt(x));
    for (int y : ids)
      if (g.defined(x, y) && !in[g.mul[x][y]])
        throw GroupoidError("NotSubgroupoid",
                            std::string(name) + " not closed at (" + elt(x) + "," + elt(y) + ")");
  }
}

}  // namespace

MatchPair match_pair(const Groupoid& g, std::vector<int> h_ids, std::vector<int> k_ids) {
  MatchPair mp;
  mp.g = g;
  mp.h_ids = std::move(h_ids);
  mp.k_ids = std::move(k_ids);
  check_subgroupoid(g, mp.h_ids, "H");
  check_subgroupoid(g, mp.k_ids, "K");
  mp.in_h.assign(g.n, 0);
  mp.in_k.assign(g.n, 0);
  for (int x : mp.h_ids) mp.in_h[x] = 1;
  for (int x : mp.k_ids) mp.in_k[x] = 1;
  for (int u : g.units)
    if (!mp.in_h[u] || !mp.in_k[u])
      throw GroupoidError("NotSubgroupoid", "subgroupoids must contain all units");
  for (int x = 0; x < g.n; ++x)
    if (mp.in_h[x] && mp.in_k[x] && !g.is_unit(x))
      throw GroupoidError("IntersectionTooBig", elt(x) + " lies in H and K");

  // unique factorization g = p1(g) p2(g) by exhaustive enumeration
  mp.p1.assign(g.n, -1);
  mp.p2.assign(g.n, -1);
  mp.m.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    for (int h : mp.h_ids)
      for (int k : mp.k_ids)
        if (g.defined(h, k) && g.mul[h][k] == x) {
          if (mp.p1[x] >= 0)
            throw GroupoidError("FactorizationAmbiguous", elt(x));
          mp.p1[x] = h;
          mp.p2[x] = k;
        }
    if (mp.p1[x] < 0) throw GroupoidError("FactorizationMissing", elt(x));
    mp.m[x] = g.src[mp.p1[x]];
    if (mp.m[x] != g.tgt[mp.p2[x]])
      throw GroupoidError("FactorizationMissing", "middle map inconsistent at " + elt(x));
  }

  // G = KH as well (derived, not an input requirement)
  {
    std::vector<int> count(g.n, 0);
    for (int k : mp.k_ids)
      for (int h : mp.h_ids)
        if (g.defined(k, h)) count[g.mul[k][h]]++;
    for (int x = 0; x < g.n; ++x)
      if (count[x] != 1)
        throw GroupoidError("FactorizationMissing", "G != KH at " + elt(x));
  }

  // mutual actions: kh = (k |> h)(k <| h)
  mp.act_left.assign(g.n, std::vector<int>(g.n, -1));
  mp.act_right.assign(g.n, std::vector<int>(g.n, -1));
  for (int k : mp.k_ids)
    for (int h : mp.h_ids)
      if (g.defined(k, h)) {
        const int kh = g.mul[k][h];
        mp.act_left[k][h] = mp.p1[kh];
        mp.act_right[k][h] = mp.p2[kh];
        mp.cells.emplace_back(k, h);
      }

  // Invariant: Card(K^{s(h)}) = Card(K^{r(h)}) for h in H
  auto k_tgt_count = [&](int u) {
    int c = 0;
    for (int k : mp.k_ids)
      if (g.tgt[k] == u) ++c;
    return c;
  };
  for (int h : mp.h_ids)
    if (k_tgt_count(g.src[h]) != k_tgt_count(g.tgt[h]))
      throw GroupoidError("FactorizationMissing", "fiber cardinality fails at " + elt(h));

  // Invariant: Card(m^{-1}(u)) = Card(s^{-1}(u)) = Card(r^{-1}(u))
  for (int u : g.units) {
    int cm = 0;
    for (int x = 0; x < g.n; ++x)
      if (mp.m[x] == u) ++cm;
    const int cs = static_cast<int>(g.src_fiber(u).size());
    const int cr = static_cast<int>(g.tgt_fiber(u).size());
    if (cm != cs || cs != cr)
      throw GroupoidError("FactorizationMissing", "middle fiber cardinality fails at unit " + elt(u));
  }
  return mp;
}

std::optional<Cell> box_horizontal(const MatchPair& mp, Cell a, Cell b) {
  const auto& g = mp.g;
  if (!mp.cell_ok(a.first, a.second) || !mp.cell_ok(b.first, b.second)) return std::nullopt;
  // composable when the left cell's H-coordinate is k' |> h'
  if (a.second != mp.act_left[b.first][b.second]) return std::nullopt;
  if (!g.defined(a.first, b.first)) return std::nullopt;
  return Cell{g.mul[a.first][b.first], b.second};
}

std::optional<Cell> box_vertical(const MatchPair& mp, Cell a, Cell b) {
  const auto& g = mp.g;
  if (!mp.cell_ok(a.first, a.second) || !mp.cell_ok(b.first, b.second)) return std::nullopt;
  if (b.first != mp.act_right[a.first][a.second]) return std::nullopt;
  if (!g.defined(a.second, b.second)) return std::nullopt;
  return Cell{a.first, g.mul[a.second][b.second]};
}

Cell cell_horizontal_inverse(const MatchPair& mp, Cell a) {
  return Cell{mp.g.inv[a.first], mp.act_left[a.first][a.second]};
}

Cell cell_vertical_inverse(const MatchPair& mp, Cell a) {
  return Cell{mp.act_right[a.first][a.second], mp.g.inv[a.second]};
}

}  // namespace fqg
