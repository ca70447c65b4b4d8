#pragma once
// Shared test helpers: the filled-square complex written out table by table,
// deterministic random model generators, and fixture file paths.

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "highergraph/kan.hpp"
#include "highergraph/models.hpp"
#include "highergraph/presheaf.hpp"

namespace hgtest {

using namespace highergraph;

inline std::string fixture_path(const std::string& name) {
  return std::string(HG_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// The filled square: triangles abd and acd glued along the diagonal ad.
/// Face tables are written out by hand; cell order a,b,c,d / ab,ac,ad,bd,cd /
/// abd,acd.  The first [0]->[1] arrow selects the edge source, the second the
/// target.
inline Presheaf square_presheaf(int truncation = 2) {
  const CategoryTag T = CategoryTag::SemiSimplicial;
  ObjectId v0{T, 0, {}}, v1{T, 1, {}}, v2{T, 2, {}};
  std::map<ObjectId, std::vector<std::string>> cells{
      {v0, {"a", "b", "c", "d"}},
      {v1, {"ab", "ac", "ad", "bd", "cd"}},
      {v2, {"abd", "acd"}}};
  std::map<MorphismId, std::vector<int>> action;
  action[MorphismId{v0, v1, {0}}] = {0, 0, 0, 1, 2};  // edge source
  action[MorphismId{v0, v1, {1}}] = {1, 2, 3, 3, 3};  // edge target
  action[MorphismId{v0, v2, {0}}] = {0, 0};
  action[MorphismId{v0, v2, {1}}] = {1, 2};
  action[MorphismId{v0, v2, {2}}] = {3, 3};
  action[MorphismId{v1, v2, {0, 1}}] = {0, 1};  // last face
  action[MorphismId{v1, v2, {0, 2}}] = {2, 2};  // middle face: the diagonal
  action[MorphismId{v1, v2, {1, 2}}] = {3, 4};  // first face
  return Presheaf(standard_indexing(T, truncation), cells, action);
}

inline DirectedGraph random_graph(std::mt19937& rng, int max_v = 8, int max_e = 16) {
  int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_v));
  std::vector<std::string> verts;
  for (int i = 0; i < n; ++i) verts.push_back("v" + std::to_string(i));
  int e = static_cast<int>(rng() % static_cast<unsigned>(max_e + 1));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int k = 0; k < e; ++k)
    edges.emplace_back(verts[rng() % static_cast<unsigned>(n)],
                       verts[rng() % static_cast<unsigned>(n)]);
  return graph_from_edge_list(verts, edges);
}

inline DirectedHypergraph random_hypergraph(std::mt19937& rng, int max_v = 5, int max_groups = 5,
                                            int truncation = 3) {
  int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_v));
  std::vector<std::string> verts;
  for (int i = 0; i < n; ++i) verts.push_back("v" + std::to_string(i));
  int g = static_cast<int>(rng() % static_cast<unsigned>(max_groups + 1));
  std::vector<std::vector<std::string>> groups;
  for (int k = 0; k < g; ++k) {
    int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(truncation));
    std::vector<std::string> group;
    for (int t = 0; t < size; ++t) group.push_back(verts[rng() % static_cast<unsigned>(n)]);
    groups.push_back(std::move(group));
  }
  return hypergraph_from_groups(verts, groups, truncation);
}

/// A random simplicial complex presented as the subset closure of a few
/// random ground-set subsets.
inline SemiSimplicialSet random_complex(std::mt19937& rng, int max_v = 5, int max_top = 4,
                                        int truncation = 3) {
  int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_v - 1));
  std::vector<std::string> ground;
  for (int i = 0; i < n; ++i) ground.push_back(std::string(1, static_cast<char>('a' + i)));
  int tops = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_top));
  std::vector<std::vector<std::string>> members;
  for (int k = 0; k < tops; ++k) {
    int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(truncation + 1, n)));
    std::vector<std::string> m;
    for (int t = 0; t < size; ++t) m.push_back(ground[rng() % static_cast<unsigned>(n)]);
    members.push_back(std::move(m));
  }
  MultiRelation rel = relation_from_names(ground, members);
  if (rel.members.empty()) rel.members.push_back({0});
  return semisimplicial_from_relation(subset_closure(rel), truncation);
}

/// Arbitrary tables over a marker category are always functorial (no two
/// non-identity arrows compose), so these can be sampled freely.
inline Presheaf random_marker_presheaf(std::mt19937& rng, CategoryTag tag, int truncation) {
  IndexingCategory idx = standard_indexing(tag, truncation);
  std::map<ObjectId, std::vector<std::string>> cells;
  ObjectId v = idx.cat.vertex_object();
  int nv = 1 + static_cast<int>(rng() % 4u);
  for (int k = 0; k < nv; ++k) cells[v].push_back("p" + std::to_string(k));
  for (const auto& o : idx.cat.objects()) {
    if (o == v) continue;
    int n = static_cast<int>(rng() % 4u);
    for (int k = 0; k < n; ++k)
      cells[o].push_back(object_key(o) + "x" + std::to_string(k));
  }
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& m : idx.cat.all_morphisms()) {
    if (idx.cat.is_identity(m)) continue;
    std::vector<int> table;
    for (std::size_t k = 0; k < cells[m.dst].size(); ++k)
      table.push_back(static_cast<int>(rng() % static_cast<unsigned>(nv)));
    action[m] = std::move(table);
  }
  return Presheaf(idx, cells, action);
}

inline Presheaf random_simplicial(std::mt19937& rng, int truncation = 2) {
  DirectedHypergraph h = random_hypergraph(rng, 4, 4, truncation + 1);
  ModelFunctor A = hypergraph_to_simplicial(h.presheaf.index(),
                                            standard_indexing(CategoryTag::Simplicial, truncation));
  return left_kan(A, h.presheaf).presheaf;
}

inline Presheaf random_symmetric(std::mt19937& rng, int truncation = 2) {
  SemiSimplicialSet x = random_complex(rng, 4, 3, truncation);
  ModelFunctor sy = semisimplicial_to_symmetric(x.presheaf.index(),
                                                standard_indexing(CategoryTag::Symmetric, truncation));
  return left_kan(sy, x.presheaf).presheaf;
}

inline Presheaf random_broadcast(std::mt19937& rng, int truncation = 2) {
  DirectedHypergraph h = random_hypergraph(rng, 4, 4, truncation + 1);
  ModelFunctor bt = hypergraph_to_broadcast(h.presheaf.index(),
                                            standard_indexing(CategoryTag::Broadcast, truncation));
  return left_kan(bt, h.presheaf).presheaf;
}

inline Presheaf random_preorder_presheaf(std::mt19937& rng, int truncation = 2) {
  IndexingCategory idx = standard_indexing(CategoryTag::Preorder, truncation);
  auto objects = idx.cat.objects();
  return representable_presheaf(idx, objects[rng() % objects.size()]);
}

}  // namespace hgtest
