#pragma once
// Independent oracles the tests compare the library against.  Everything here
// is computed from first principles (brute-force enumeration and definition
// chasing), not through the code paths under test.

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "highergraph/models.hpp"
#include "highergraph/presheaf.hpp"

namespace hgtest {

using namespace highergraph;

/// All functions {0..m} -> {0..n}, lexicographic.
inline std::vector<std::vector<int>> all_functions(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(m) + 1, 0);
  while (true) {
    out.push_back(f);
    int k = m;
    while (k >= 0 && f[static_cast<std::size_t>(k)] == n) --k;
    if (k < 0) break;
    ++f[static_cast<std::size_t>(k)];
    for (int j = k + 1; j <= m; ++j) f[static_cast<std::size_t>(j)] = 0;
  }
  return out;
}

inline long count_strictly_increasing(int m, int n) {
  long c = 0;
  for (const auto& f : all_functions(m, n)) {
    bool ok = true;
    for (int k = 0; k < m; ++k)
      if (f[static_cast<std::size_t>(k)] >= f[static_cast<std::size_t>(k) + 1]) ok = false;
    if (ok) ++c;
  }
  return c;
}

inline long count_nondecreasing(int m, int n) {
  long c = 0;
  for (const auto& f : all_functions(m, n)) {
    bool ok = true;
    for (int k = 0; k < m; ++k)
      if (f[static_cast<std::size_t>(k)] > f[static_cast<std::size_t>(k) + 1]) ok = false;
    if (ok) ++c;
  }
  return c;
}

inline long count_functions(int m, int n) {
  return static_cast<long>(all_functions(m, n).size());
}

/// Hub-preserving or constant functions, the broadcast morphisms.
inline long count_broadcast_maps(int m, int n) {
  long c = 0;
  for (const auto& f : all_functions(m, n)) {
    bool hub = f[0] == 0;
    bool constant = true;
    for (int k = 0; k < m; ++k)
      if (f[static_cast<std::size_t>(k)] != f[static_cast<std::size_t>(k) + 1]) constant = false;
    if (hub || constant) ++c;
  }
  return c;
}

/// Preorder-preserving maps between linear preorders given as block sizes:
/// positions in earlier blocks must land in blocks no later than positions in
/// later blocks, and same-block positions must land in the same block.
inline long count_preorder_maps(const std::vector<int>& src_blocks,
                                const std::vector<int>& dst_blocks) {
  int m = 0, n = 0;
  for (int b : src_blocks) m += b;
  for (int b : dst_blocks) n += b;
  auto block_of = [](const std::vector<int>& blocks, int pos) {
    int b = 0, acc = 0;
    for (; b < static_cast<int>(blocks.size()); ++b) {
      acc += blocks[static_cast<std::size_t>(b)];
      if (pos < acc) break;
    }
    return b;
  };
  long c = 0;
  for (const auto& f : all_functions(m - 1, n - 1)) {
    bool ok = true;
    for (int p = 0; p < m && ok; ++p)
      for (int q = p + 1; q < m && ok; ++q) {
        int bp = block_of(src_blocks, p), bq = block_of(src_blocks, q);
        int ip = block_of(dst_blocks, f[static_cast<std::size_t>(p)]);
        int iq = block_of(dst_blocks, f[static_cast<std::size_t>(q)]);
        if (bp == bq ? ip != iq : ip > iq) ok = false;
      }
    if (ok) ++c;
  }
  return c;
}

/// Direct face-identity scan for the simplex-shaped categories: rebuild each
/// face operator from its coface arrow and check d_i d_j == d_{j-1} d_i
/// entrywise.  Returns {level, i, j, cell} per violation.
inline std::vector<std::array<int, 4>> face_violations(const Presheaf& X) {
  std::vector<std::array<int, 4>> out;
  CategoryTag T = X.cat().tag();
  auto coface = [T](int m, int i) {
    std::vector<int> data;
    for (int k = 0; k <= m; ++k)
      if (k != i) data.push_back(k);
    return data;
  };
  for (int m = 2; m <= X.cat().truncation(); ++m) {
    ObjectId top{T, m, {}}, mid{T, m - 1, {}}, low{T, m - 2, {}};
    auto d_top = [&](int i, int t) { return X.apply(MorphismId{mid, top, coface(m, i)}, t); };
    auto d_mid = [&](int i, int t) { return X.apply(MorphismId{low, mid, coface(m - 1, i)}, t); };
    for (int j = 1; j <= m; ++j)
      for (int i = 0; i < j; ++i)
        for (int t = 0; t < X.cell_count(top); ++t)
          if (d_mid(i, d_top(j, t)) != d_mid(j - 1, d_top(i, t))) out.push_back({m, i, j, t});
  }
  return out;
}

/// One clique-completion cell by the direct description: a vertex per tuple
/// position plus an edge per position pair, with matching endpoints.  Keyed
/// by (source object, arrow data) so the comparison is independent of any
/// slot ordering.
using SlotKey = std::pair<ObjectId, std::vector<int>>;
using KeyedFamily = std::map<SlotKey, int>;

inline std::set<KeyedFamily> oracle_clique_cells(const DirectedGraph& g, int n) {
  ObjectId V = g.presheaf.cat().vertex_object();
  ObjectId E = g.presheaf.cat().edge_object(2);
  MorphismId src_arrow = g.presheaf.cat().vertex_arrow(2, 1);
  MorphismId tgt_arrow = g.presheaf.cat().vertex_arrow(2, 2);
  int nv = g.presheaf.cell_count(V), ne = g.presheaf.cell_count(E);

  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l) pairs.emplace_back(k, l);

  std::set<KeyedFamily> out;
  if (nv == 0) return out;
  std::vector<int> verts(static_cast<std::size_t>(n) + 1, 0);
  auto emit_edges = [&](auto&& self, KeyedFamily fam, std::size_t p) -> void {
    if (p == pairs.size()) {
      out.insert(std::move(fam));
      return;
    }
    auto [k, l] = pairs[p];
    for (int e = 0; e < ne; ++e) {
      if (g.presheaf.apply(src_arrow, e) != verts[static_cast<std::size_t>(k)]) continue;
      if (g.presheaf.apply(tgt_arrow, e) != verts[static_cast<std::size_t>(l)]) continue;
      KeyedFamily next = fam;
      next[{E, {k, l}}] = e;
      self(self, std::move(next), p + 1);
    }
  };
  while (true) {
    KeyedFamily fam;
    for (int k = 0; k <= n; ++k) fam[{V, {k}}] = verts[static_cast<std::size_t>(k)];
    emit_edges(emit_edges, std::move(fam), 0);
    int k = n;
    while (k >= 0 && verts[static_cast<std::size_t>(k)] == nv - 1) --k;
    if (k < 0) break;
    ++verts[static_cast<std::size_t>(k)];
    for (int j = k + 1; j <= n; ++j) verts[static_cast<std::size_t>(j)] = 0;
  }
  return out;
}

/// Graph morphism count by endpoint bookkeeping: over every vertex map, the
/// number of ways to choose a compatible image edge per edge.
inline long oracle_graph_hom_count(const DirectedGraph& F, const DirectedGraph& G) {
  ObjectId V = F.presheaf.cat().vertex_object();
  ObjectId E = F.presheaf.cat().edge_object(2);
  MorphismId s = F.presheaf.cat().vertex_arrow(2, 1);
  MorphismId t = F.presheaf.cat().vertex_arrow(2, 2);
  int nfv = F.presheaf.cell_count(V), ngv = G.presheaf.cell_count(V);
  int nfe = F.presheaf.cell_count(E), nge = G.presheaf.cell_count(E);
  if (nfv == 0) return nfe == 0 ? 1 : 0;
  if (ngv == 0) return 0;

  std::map<std::pair<int, int>, long> targets;  // (src,tgt) -> edge count in G
  for (int e = 0; e < nge; ++e)
    ++targets[{G.presheaf.apply(s, e), G.presheaf.apply(t, e)}];

  long total = 0;
  std::vector<int> f(static_cast<std::size_t>(nfv), 0);
  while (true) {
    long ways = 1;
    for (int e = 0; e < nfe && ways > 0; ++e) {
      auto it = targets.find({f[static_cast<std::size_t>(F.presheaf.apply(s, e))],
                              f[static_cast<std::size_t>(F.presheaf.apply(t, e))]});
      ways *= it == targets.end() ? 0 : it->second;
    }
    total += ways;
    int k = nfv - 1;
    while (k >= 0 && f[static_cast<std::size_t>(k)] == ngv - 1) --k;
    if (k < 0) break;
    ++f[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < nfv; ++j) f[static_cast<std::size_t>(j)] = 0;
  }
  return total;
}

}  // namespace hgtest
