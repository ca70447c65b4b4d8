#pragma once
// User-facing model types: graphs, hypergraphs, the simplex-flavored models
// and broadcast shapes, all thin wrappers around a presheaf over the right
// indexing category, plus constructors from plain network data and the
// derived notions (1-skeleton, underlying basic graph, uniformity, subset
// closure, sub-simplex and sub-edge queries, clique completion, symmetrizing,
// broadcast event logs).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "highergraph/category.hpp"
#include "highergraph/kan.hpp"
#include "highergraph/presheaf.hpp"

namespace highergraph {

struct DirectedGraph {
  Presheaf presheaf;  // over the graph category
};
struct DirectedHypergraph {
  Presheaf presheaf;  // over the hypergraph category
};
struct SemiSimplicialSet {
  Presheaf presheaf;  // over the semi-simplicial category
};
struct SimplicialSet {
  Presheaf presheaf;  // over the simplicial category
};
struct SymmetricSSet {
  Presheaf presheaf;  // over the symmetric category
};
struct BroadcastGraph {
  Presheaf presheaf;  // over the broadcast category
};
struct PreorderSSet {
  Presheaf presheaf;  // over the linear-preorder category
};

/// Vertex set plus a multiset of non-empty vertex subsets.  Set-level only:
/// the unordered companion of DirectedHypergraph.
struct UndirectedHypergraph {
  std::vector<std::string> vertices;
  std::vector<std::vector<int>> hyperedges;  // sorted unique vertex indices
};

namespace detail {
inline std::map<std::string, int> label_index(const std::vector<std::string>& labels) {
  std::map<std::string, int> out;
  for (std::size_t k = 0; k < labels.size(); ++k) out[labels[k]] = static_cast<int>(k);
  return out;
}
inline void require_valid(const Presheaf& p, const std::string& who) {
  auto report = validate_presheaf(p);
  if (!report.ok())
    throw std::logic_error(who + ": constructed presheaf is invalid: " +
                           report.all_problems().front());
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Graphs.

/// Builds a directed graph from named vertices and ordered edge pairs.  Edge
/// order is preserved; loops are allowed; endpoints must be listed vertices.
inline DirectedGraph graph_from_edge_list(
    const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  IndexingCategory idx = standard_indexing(CategoryTag::Graph, 2);
  auto vi = detail::label_index(vertices);
  if (vi.size() != vertices.size())
    throw std::invalid_argument("graph_from_edge_list: duplicate vertex name");
  std::vector<std::string> edge_labels;
  std::vector<int> sources, targets;
  for (const auto& [s, t] : edges) {
    auto is = vi.find(s), it = vi.find(t);
    if (is == vi.end() || it == vi.end())
      throw std::invalid_argument("graph_from_edge_list: dangling endpoint '" +
                                  (is == vi.end() ? s : t) + "'");
    edge_labels.push_back(s + ">" + t);
    sources.push_back(is->second);
    targets.push_back(it->second);
  }
  // Duplicate ordered pairs get a positional suffix to keep labels unique.
  std::map<std::string, int> uses;
  for (const auto& l : edge_labels) ++uses[l];
  std::map<std::string, int> seen;
  for (auto& l : edge_labels)
    if (uses[l] > 1) l += "#" + std::to_string(seen[l]++);
  std::map<ObjectId, std::vector<std::string>> cells{
      {idx.cat.vertex_object(), vertices}, {idx.cat.edge_object(2), std::move(edge_labels)}};
  std::map<MorphismId, std::vector<int>> action;
  if (!edges.empty()) {
    action[idx.cat.vertex_arrow(2, 1)] = std::move(sources);
    action[idx.cat.vertex_arrow(2, 2)] = std::move(targets);
  }
  DirectedGraph g{Presheaf(idx, std::move(cells), std::move(action))};
  detail::require_valid(g.presheaf, "graph_from_edge_list");
  return g;
}

inline const std::vector<std::string>& vertex_labels(const DirectedGraph& g) {
  return g.presheaf.labels(g.presheaf.cat().vertex_object());
}

/// Edge view: (source cell, target cell) per edge, in cell order.
inline std::vector<std::pair<int, int>> edge_endpoints(const DirectedGraph& g) {
  const FiniteCategory& cat = g.presheaf.cat();
  std::vector<std::pair<int, int>> out;
  int ne = g.presheaf.cell_count(cat.edge_object(2));
  for (int e = 0; e < ne; ++e)
    out.emplace_back(g.presheaf.apply(cat.vertex_arrow(2, 1), e),
                     g.presheaf.apply(cat.vertex_arrow(2, 2), e));
  return out;
}

// ---------------------------------------------------------------------------
// Hypergraphs.

/// Builds a directed hypergraph from named vertices and ordered groups; each
/// k-tuple becomes one E_k cell.  Duplicate groups stay distinct cells.
inline DirectedHypergraph hypergraph_from_groups(const std::vector<std::string>& vertices,
                                                 const std::vector<std::vector<std::string>>& groups,
                                                 int truncation = 6) {
  IndexingCategory idx = standard_indexing(CategoryTag::Hypergraph, truncation);
  auto vi = detail::label_index(vertices);
  if (vi.size() != vertices.size())
    throw std::invalid_argument("hypergraph_from_groups: duplicate vertex name");
  std::map<ObjectId, std::vector<std::string>> cells{{idx.cat.vertex_object(), vertices}};
  std::map<int, std::vector<std::vector<int>>> tuples;  // arity -> member tuples
  std::map<std::string, int> uses, seen;
  std::vector<std::string> raw_labels;
  for (const auto& group : groups) {
    if (group.empty()) throw std::invalid_argument("hypergraph_from_groups: empty group");
    if (static_cast<int>(group.size()) > truncation)
      throw std::invalid_argument("hypergraph_from_groups: group of size " +
                                  std::to_string(group.size()) +
                                  " exceeds the truncation (truncation overflow)");
    std::string label;
    std::vector<int> tuple;
    for (const auto& name : group) {
      auto it = vi.find(name);
      if (it == vi.end())
        throw std::invalid_argument("hypergraph_from_groups: unknown entity '" + name + "'");
      if (!label.empty()) label += ">";
      label += name;
      tuple.push_back(it->second);
    }
    raw_labels.push_back(label);
    ++uses[label];
    tuples[static_cast<int>(group.size())].push_back(std::move(tuple));
  }
  std::map<int, std::vector<std::string>> labels_by_arity;
  std::size_t g = 0;
  for (const auto& group : groups) {
    std::string label = raw_labels[g++];
    if (uses[label] > 1) label += "#" + std::to_string(seen[label]++);
    labels_by_arity[static_cast<int>(group.size())].push_back(label);
  }
  std::map<MorphismId, std::vector<int>> action;
  for (auto& [arity, ts] : tuples) {
    cells[idx.cat.edge_object(arity)] = labels_by_arity[arity];
    for (int i = 1; i <= arity; ++i) {
      std::vector<int> table;
      for (const auto& t : ts) table.push_back(t[static_cast<std::size_t>(i - 1)]);
      action[idx.cat.vertex_arrow(arity, i)] = std::move(table);
    }
  }
  DirectedHypergraph h{Presheaf(idx, std::move(cells), std::move(action))};
  detail::require_valid(h.presheaf, "hypergraph_from_groups");
  return h;
}

/// The vertex tuple of the c-th cell at E_n, via the n member selectors.
inline std::vector<int> hyperedge_tuple(const DirectedHypergraph& h, int n, int c) {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i)
    out.push_back(h.presheaf.apply(h.presheaf.cat().vertex_arrow(n, i), c));
  return out;
}

/// Forgets tuple order and repetition: each hyperedge becomes its vertex set.
/// Multiplicity is preserved (two tuples give two subsets).
inline UndirectedHypergraph underlying_undirected(const DirectedHypergraph& h) {
  UndirectedHypergraph out;
  out.vertices = h.presheaf.labels(h.presheaf.cat().vertex_object());
  for (int n = 1; n <= h.presheaf.cat().truncation(); ++n) {
    ObjectId en = h.presheaf.cat().edge_object(n);
    for (int c = 0; c < h.presheaf.cell_count(en); ++c) {
      std::vector<int> t = hyperedge_tuple(h, n, c);
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      out.hyperedges.push_back(std::move(t));
    }
  }
  return out;
}

/// Every hyperedge has tuple length exactly k.
inline bool is_k_uniform(const DirectedHypergraph& h, int k) {
  for (int n = 1; n <= h.presheaf.cat().truncation(); ++n)
    if (n != k && h.presheaf.cell_count(h.presheaf.cat().edge_object(n)) > 0) return false;
  return true;
}

/// Every hyperedge has vertex-set size exactly k.
inline bool is_k_uniform(const UndirectedHypergraph& h, int k) {
  for (const auto& e : h.hyperedges)
    if (static_cast<int>(e.size()) != k) return false;
  return true;
}

/// Graphs are exactly the 2-uniform directed hypergraphs; this is the
/// inclusion at the data level (one 2-edge per edge).
inline DirectedHypergraph hypergraph_from_graph(const DirectedGraph& g, int truncation = 6) {
  IndexingCategory gidx = g.presheaf.index();
  IndexingCategory hidx = standard_indexing(CategoryTag::Hypergraph, truncation);
  ModelFunctor i = graph_to_hypergraph(gidx, hidx);
  return DirectedHypergraph{left_kan(i, g.presheaf).presheaf};
}

// ---------------------------------------------------------------------------
// The sub-edge question.

/// The library's answer to "is e a sub-edge of e2" for hypergraphs: there is
/// no structural notion to appeal to (no morphisms run between edge levels),
/// so the verdict is always "no-notion".  The tuple-level containment facts
/// are reported alongside as plain data, never as sub-edge-hood.
struct SubEdgeAnswer {
  std::string verdict = "no-notion";
  bool tuples_equal = false;
  bool tuple_is_prefix = false;       // e's tuple is an initial segment of e2's
  bool tuple_is_subsequence = false;  // e's tuple embeds order-preservingly
  bool set_is_subset = false;         // e's vertex set is contained in e2's
  std::string note;
};

inline SubEdgeAnswer sub_edge_query(const DirectedHypergraph& h, int n1, int c1, int n2, int c2) {
  std::vector<int> t1 = hyperedge_tuple(h, n1, c1), t2 = hyperedge_tuple(h, n2, c2);
  SubEdgeAnswer out;
  out.tuples_equal = t1 == t2;
  out.tuple_is_prefix = t1.size() <= t2.size() && std::equal(t1.begin(), t1.end(), t2.begin());
  std::size_t p = 0;
  for (std::size_t q = 0; q < t2.size() && p < t1.size(); ++q)
    if (t2[q] == t1[p]) ++p;
  out.tuple_is_subsequence = p == t1.size();
  std::set<int> s1(t1.begin(), t1.end()), s2(t2.begin(), t2.end());
  out.set_is_subset = std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
  out.note =
      "hypergraph edge levels carry no connecting morphisms, so sub-edge-hood is not a "
      "structural property; the tuple facts above are data comparisons only";
  return out;
}

// ---------------------------------------------------------------------------
// Multi-relations and simplex models built from them.

/// A set of subsets of a ground set.
struct MultiRelation {
  std::vector<std::string> ground;        // element names, fixing the linear order
  std::vector<std::vector<int>> members;  // each sorted, duplicate-free, non-empty
};

inline MultiRelation relation_from_names(const std::vector<std::string>& ground,
                                         const std::vector<std::vector<std::string>>& members) {
  MultiRelation r{ground, {}};
  auto gi = detail::label_index(ground);
  if (gi.size() != ground.size())
    throw std::invalid_argument("relation_from_names: duplicate ground element");
  std::set<std::vector<int>> seen;
  for (const auto& m : members) {
    std::vector<int> ids;
    for (const auto& name : m) {
      auto it = gi.find(name);
      if (it == gi.end())
        throw std::invalid_argument("relation_from_names: unknown element '" + name + "'");
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) throw std::invalid_argument("relation_from_names: empty member");
    if (seen.insert(ids).second) r.members.push_back(std::move(ids));
  }
  std::sort(r.members.begin(), r.members.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return r;
}

/// First member with a missing non-empty subset, if any: (member, subset).
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> missing_subset_witness(
    const MultiRelation& r) {
  std::set<std::vector<int>> have(r.members.begin(), r.members.end());
  for (const auto& m : r.members) {
    // All non-empty proper subsets, in binary-mask order.
    int n = static_cast<int>(m.size());
    for (int mask = 1; mask < (1 << n) - 1; ++mask) {
      std::vector<int> sub;
      for (int b = 0; b < n; ++b)
        if (mask & (1 << b)) sub.push_back(m[static_cast<std::size_t>(b)]);
      if (have.find(sub) == have.end()) return std::make_pair(m, sub);
    }
  }
  return std::nullopt;
}

/// Closed under taking non-empty subsets.
inline bool is_subset_closed(const MultiRelation& r) { return !missing_subset_witness(r); }

/// Adds every non-empty subset of every member.
inline MultiRelation subset_closure(const MultiRelation& r) {
  std::set<std::vector<int>> all(r.members.begin(), r.members.end());
  for (const auto& m : r.members) {
    int n = static_cast<int>(m.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> sub;
      for (int b = 0; b < n; ++b)
        if (mask & (1 << b)) sub.push_back(m[static_cast<std::size_t>(b)]);
      all.insert(std::move(sub));
    }
  }
  MultiRelation out{r.ground, {all.begin(), all.end()}};
  std::sort(out.members.begin(), out.members.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

/// One n-simplex per member of size n+1, faces by subset selection under the
/// ground order.  Requires subset closure; fails with the precise missing
/// subset otherwise.
inline SemiSimplicialSet semisimplicial_from_relation(const MultiRelation& r,
                                                      int truncation = 6) {
  if (auto w = missing_subset_witness(r)) {
    auto fmt = [&](const std::vector<int>& xs) {
      std::string s;
      for (int x : xs) s += r.ground[static_cast<std::size_t>(x)];
      return s;
    };
    throw std::invalid_argument("semisimplicial_from_relation: relation is not subset-closed: "
                                "member '" +
                                fmt(w->first) + "' lacks subset '" + fmt(w->second) + "'");
  }
  IndexingCategory idx = standard_indexing(CategoryTag::SemiSimplicial, truncation);
  CategoryTag T = CategoryTag::SemiSimplicial;
  std::map<int, std::vector<std::vector<int>>> by_level;
  for (const auto& m : r.members) {
    int level = static_cast<int>(m.size()) - 1;
    if (level > truncation)
      throw std::invalid_argument(
          "semisimplicial_from_relation: member larger than the truncation allows "
          "(truncation overflow)");
    by_level[level].push_back(m);
  }
  std::map<ObjectId, std::vector<std::string>> cells;
  std::map<int, std::map<std::vector<int>, int>> pos;
  for (auto& [level, ms] : by_level) {
    std::vector<std::string> labels;
    for (const auto& m : ms) {
      pos[level][m] = static_cast<int>(labels.size());
      std::string l;
      for (int x : m) l += r.ground[static_cast<std::size_t>(x)];
      labels.push_back(std::move(l));
    }
    cells[ObjectId{T, level, {}}] = std::move(labels);
  }
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& [q, cs] : by_level)
    for (const auto& [p, lower] : by_level) {
      if (p >= q) continue;
      ObjectId op{T, p, {}}, oq{T, q, {}};
      for (const auto& m : idx.cat.hom(op, oq)) {
        std::vector<int> table;
        for (const auto& member : cs) {
          std::vector<int> sub;
          for (int v : m.data) sub.push_back(member[static_cast<std::size_t>(v)]);
          auto it = pos[p].find(sub);
          if (it == pos[p].end())
            throw std::logic_error("semisimplicial_from_relation: face escaped the closure");
          table.push_back(it->second);
        }
        action[m] = std::move(table);
      }
    }
  SemiSimplicialSet out{Presheaf(idx, std::move(cells), std::move(action))};
  detail::require_valid(out.presheaf, "semisimplicial_from_relation");
  return out;
}

// ---------------------------------------------------------------------------
// Derived views of simplex models.

/// Vertices and edges of a semi-simplicial set, endpoints read off the two
/// level-1 faces (position 0 is the source, position 1 the target).
inline DirectedGraph one_skeleton(const SemiSimplicialSet& x) {
  IndexingCategory gidx = standard_indexing(CategoryTag::Graph, 2);
  ModelFunctor gs = graph_to_semisimplicial(gidx, x.presheaf.index());
  return DirectedGraph{restrict_presheaf(gs, x.presheaf)};
}

/// Restriction along the designated basic vocabulary: every model has an
/// underlying basic higher graph.  For graph-indexed models the basic
/// category is cut at level 2, since the graph category has no genuine
/// 3-and-higher edge roster.
inline Presheaf underlying_basic_graph(const Presheaf& model) {
  int trunc = model.cat().tag() == CategoryTag::Graph ? 2 : model.cat().truncation();
  if (trunc < 2)
    throw std::invalid_argument(
        "underlying_basic_graph: the model's vocabulary has no 2-edges at this truncation");
  IndexingCategory bidx = standard_indexing(CategoryTag::Basic, trunc);
  ModelFunctor f = basic_inclusion(bidx, model.index());
  return restrict_presheaf(f, model);
}

/// All cells reachable from (o, c) along the contravariant actions, the cell
/// itself included; for simplex models these are the sub-simplices.
inline std::vector<std::pair<ObjectId, int>> subsimplices(const Presheaf& x, const ObjectId& o,
                                                          int c) {
  if (c < 0 || c >= x.cell_count(o))
    throw std::out_of_range("subsimplices: cell index out of range");
  std::set<std::pair<ObjectId, int>> found;
  for (const auto& a : x.cat().objects())
    for (const auto& m : x.cat().hom(a, o)) found.insert({a, x.apply(m, c)});
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------------------
// Kan-powered constructions.

/// Right Kan extension of a graph into semi-simplicial sets: an n-simplex for
/// every family (v_0..v_n; e_kl for k < l) with source(e_kl) = v_k and
/// target(e_kl) = v_l, i.e. every directed clique with chosen edges.
inline SemiSimplicialSet clique_completion(const DirectedGraph& g, int truncation = 6,
                                           std::uint64_t budget = 1'000'000) {
  IndexingCategory ssidx = standard_indexing(CategoryTag::SemiSimplicial, truncation);
  ModelFunctor gs = graph_to_semisimplicial(g.presheaf.index(), ssidx);
  return SemiSimplicialSet{right_kan(gs, g.presheaf, budget).presheaf};
}

/// Left Kan extension into the symmetric category, with both raw and
/// nondegenerate per-level counts (the extension necessarily adds degenerate
/// and reoriented cells).
struct SymmetrizeResult {
  SymmetricSSet model;
  std::map<ObjectId, int> raw_counts;
  std::map<ObjectId, int> nondegenerate;
};

inline SymmetrizeResult symmetrize(const SemiSimplicialSet& x,
                                   std::uint64_t budget = 1'000'000) {
  IndexingCategory symidx =
      standard_indexing(CategoryTag::Symmetric, x.presheaf.cat().truncation());
  ModelFunctor sy = semisimplicial_to_symmetric(x.presheaf.index(), symidx);
  SymmetrizeResult out{SymmetricSSet{left_kan(sy, x.presheaf, budget).presheaf}, {}, {}};
  for (const auto& o : out.model.presheaf.cat().objects())
    out.raw_counts[o] = out.model.presheaf.cell_count(o);
  out.nondegenerate = nondegenerate_counts(out.model.presheaf);
  return out;
}

/// A broadcast event log turned into a broadcast-shaped presheaf: the events
/// become generator cells (one (n)-cell per broadcast reaching n receivers,
/// sender on the hub), and the free construction fills in the cells the
/// broadcast category forces around them.  `event_cells[k]` locates event k.
struct BroadcastBuild {
  BroadcastGraph model;
  std::vector<std::pair<ObjectId, int>> event_cells;
  std::map<ObjectId, int> nondegenerate;
};

inline BroadcastBuild broadcast_from_events(
    const std::vector<std::string>& entities,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& broadcasts,
    int truncation = 6, std::uint64_t budget = 1'000'000) {
  if (truncation + 1 > 16)
    throw std::invalid_argument("broadcast_from_events: truncation too large");
  std::vector<std::vector<std::string>> groups;
  for (const auto& [sender, receivers] : broadcasts) {
    if (receivers.empty())
      throw std::invalid_argument("broadcast_from_events: broadcast with no receivers");
    if (static_cast<int>(receivers.size()) > truncation)
      throw std::invalid_argument(
          "broadcast_from_events: receiver list exceeds the truncation (truncation overflow)");
    std::vector<std::string> tuple{sender};
    tuple.insert(tuple.end(), receivers.begin(), receivers.end());
    groups.push_back(std::move(tuple));
  }
  DirectedHypergraph log = hypergraph_from_groups(entities, groups, truncation + 1);
  IndexingCategory tidx = standard_indexing(CategoryTag::Broadcast, truncation);
  ModelFunctor bt = hypergraph_to_broadcast(log.presheaf.index(), tidx);
  LeftKanResult L = left_kan(bt, log.presheaf, budget);
  BroadcastBuild out{BroadcastGraph{L.presheaf}, {}, nondegenerate_counts(L.presheaf)};
  // Recover each event's cell through the unit, tracking per-arity positions.
  std::map<int, int> next_at_arity;
  for (const auto& [sender, receivers] : broadcasts) {
    int arity = static_cast<int>(receivers.size()) + 1;
    ObjectId en = log.presheaf.cat().edge_object(arity);
    int c = next_at_arity[arity]++;
    out.event_cells.emplace_back(bt.ap(en), L.unit.at(en)[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace highergraph
