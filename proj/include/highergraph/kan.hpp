#pragma once
// Change-of-model machinery.  A ModelFunctor h maps one indexing category
// into another while preserving the basic vertex/edge vocabulary.  Presheaves
// move along h three ways:
//
//   restrict_presheaf  R_h: precompose with h; forgets structure.
//   left_kan           L_h: freely generate structure (pointwise colimit over
//                      a comma category, computed by union-find).
//   right_kan          A_h: fill in all compatible structure (pointwise limit,
//                      computed by enumerating compatible families).
//
// L_h is left adjoint to R_h and A_h is right adjoint to it; the units,
// counits and adjunct maps of both adjunctions are computed explicitly so the
// bijections and triangle laws can be machine-checked.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "highergraph/category.hpp"
#include "highergraph/presheaf.hpp"

namespace highergraph {

/// A structure-preserving functor between two indexing categories.
struct ModelFunctor {
  IndexingCategory source;
  IndexingCategory target;
  std::map<ObjectId, ObjectId> omap;      // every source object
  std::map<MorphismId, MorphismId> mmap;  // every non-identity source morphism
  std::string name;
  // If set, a hypothetical source object at level L beyond the truncation
  // would land at target level L + level_shift.  Drives the completeness
  // flags of Kan extensions for window-semantics source categories.
  std::optional<int> level_shift;

  ObjectId ap(const ObjectId& o) const {
    auto it = omap.find(o);
    if (it == omap.end())
      throw std::invalid_argument(name + ": no object image for " + object_key(o));
    return it->second;
  }

  MorphismId ap(const MorphismId& m) const {
    if (source.cat.is_identity(m)) return target.cat.identity(ap(m.src));
    auto it = mmap.find(m);
    if (it == mmap.end())
      throw std::invalid_argument(name + ": no morphism image for " + morphism_key(m));
    return it->second;
  }
};

/// Functoriality audit: total object/morphism maps with matching endpoints,
/// no identity entries in the morphism map, and preservation of every
/// composite.  Empty result means h is a functor.
inline std::vector<std::string> check_model_functor(const ModelFunctor& h) {
  std::vector<std::string> problems;
  auto sobs = h.source.cat.objects();
  for (const auto& o : sobs) {
    auto it = h.omap.find(o);
    if (it == h.omap.end()) {
      problems.push_back("no image for object " + object_key(o));
      continue;
    }
    if (!h.target.cat.contains(it->second))
      problems.push_back("image of " + object_key(o) + " is not a target object");
  }
  if (!problems.empty()) return problems;

  for (const auto& [m, hm] : h.mmap)
    if (h.source.cat.is_identity(m))
      problems.push_back("morphism map contains the identity " + morphism_key(m));

  std::map<std::pair<ObjectId, ObjectId>, std::vector<MorphismId>> homs;
  for (const auto& a : sobs)
    for (const auto& b : sobs) homs[{a, b}] = h.source.cat.hom(a, b);

  for (const auto& a : sobs)
    for (const auto& b : sobs)
      for (const auto& m : homs[{a, b}]) {
        if (h.source.cat.is_identity(m)) continue;
        MorphismId hm;
        try {
          hm = h.ap(m);
        } catch (const std::invalid_argument& e) {
          problems.push_back(e.what());
          continue;
        }
        if (!h.target.cat.valid_morphism(hm) || !(hm.src == h.ap(a)) || !(hm.dst == h.ap(b)))
          problems.push_back("image of " + morphism_key(m) + " is not a morphism " +
                             object_key(h.ap(a)) + " -> " + object_key(h.ap(b)));
      }
  if (!problems.empty()) return problems;

  for (const auto& a : sobs)
    for (const auto& b : sobs)
      for (const auto& f : homs[{a, b}]) {
        if (h.source.cat.is_identity(f)) continue;
        for (const auto& c : sobs)
          for (const auto& g : homs[{b, c}]) {
            if (h.source.cat.is_identity(g)) continue;
            MorphismId lhs = h.ap(h.source.cat.compose(g, f));
            MorphismId rhs = h.target.cat.compose(h.ap(g), h.ap(f));
            if (!(lhs == rhs))
              problems.push_back("composition not preserved on " + morphism_key(g) + " after " +
                                 morphism_key(f));
          }
      }
  return problems;
}

/// Per-level agreement of h with the two basic vocabularies: level n is
/// compatible when h maps the source's E_n image and selectors onto the
/// target's.  `ok` requires compatibility on the source's genuine levels
/// (level 2 only when the source is the two-object graph category, whose
/// E_n images for n > 2 are a non-faithful stand-in).
struct BasicCompatibility {
  bool vertex_ok = false;
  std::map<int, bool> level_ok;
  bool ok = false;
};

inline BasicCompatibility basic_compatibility(const ModelFunctor& h) {
  BasicCompatibility out;
  out.vertex_ok = h.ap(h.source.vertex) == h.target.vertex;
  int top = std::min(h.source.cat.truncation(), h.target.cat.truncation());
  if (h.source.cat.tag() == CategoryTag::Graph) top = std::min(top, 2);
  int genuine_top = h.source.cat.tag() == CategoryTag::Graph ? 2 : top;
  out.ok = out.vertex_ok;
  for (int n = 2; n <= top; ++n) {
    bool good = h.ap(h.source.edge_image(n)) == h.target.edge_image(n);
    for (int i = 1; i <= n && good; ++i)
      good = h.ap(h.source.vertex_sel_image(n, i)) == h.target.vertex_sel_image(n, i);
    out.level_ok[n] = good;
    if (n <= genuine_top && !good) out.ok = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in functor roster.

inline ModelFunctor identity_functor(const IndexingCategory& idx) {
  ModelFunctor h{idx, idx, {}, {}, "identity", 0};
  for (const auto& o : idx.cat.objects()) h.omap[o] = o;
  for (const auto& m : idx.cat.all_morphisms())
    if (!idx.cat.is_identity(m)) h.mmap[m] = m;
  return h;
}

namespace detail {
inline void require_tags(const ModelFunctor& h, CategoryTag s, CategoryTag t) {
  if (h.source.cat.tag() != s || h.target.cat.tag() != t)
    throw std::invalid_argument(h.name + ": wrong category tags");
}
inline void require_truncation(const std::string& name, bool ok) {
  if (!ok) throw std::invalid_argument(name + ": target truncation too small (truncation overflow)");
}
}  // namespace detail

/// Graphs into hypergraphs: V -> V, E_2 -> E_2.
inline ModelFunctor graph_to_hypergraph(const IndexingCategory& g, const IndexingCategory& hy) {
  ModelFunctor h{g, hy, {}, {}, "graph_to_hypergraph", 0};
  detail::require_tags(h, CategoryTag::Graph, CategoryTag::Hypergraph);
  detail::require_truncation(h.name, hy.cat.truncation() >= 2);
  h.omap[g.cat.vertex_object()] = hy.cat.vertex_object();
  h.omap[g.cat.edge_object(2)] = hy.cat.edge_object(2);
  for (int i = 1; i <= 2; ++i) h.mmap[g.cat.vertex_arrow(2, i)] = hy.cat.vertex_arrow(2, i);
  return h;
}

/// Hypergraphs into simplicial sets: E_n -> the (n-1)-simplex level, with the
/// i-th member selector landing on position i-1.
inline ModelFunctor hypergraph_to_simplicial(const IndexingCategory& hy,
                                             const IndexingCategory& s) {
  ModelFunctor h{hy, s, {}, {}, "hypergraph_to_simplicial", -1};
  detail::require_tags(h, CategoryTag::Hypergraph, CategoryTag::Simplicial);
  detail::require_truncation(h.name, s.cat.truncation() >= hy.cat.truncation() - 1);
  h.omap[hy.cat.vertex_object()] = s.cat.vertex_object();
  for (int n = 1; n <= hy.cat.truncation(); ++n) {
    ObjectId level{CategoryTag::Simplicial, n - 1, {}};
    h.omap[hy.cat.edge_object(n)] = level;
    for (int i = 1; i <= n; ++i)
      h.mmap[hy.cat.vertex_arrow(n, i)] = MorphismId{s.cat.vertex_object(), level, {i - 1}};
  }
  return h;
}

/// Graphs into semi-simplicial sets: V -> [0], E_2 -> [1]; the first selector
/// lands on position 0 (the edge source) and the second on position 1 (the
/// target).
inline ModelFunctor graph_to_semisimplicial(const IndexingCategory& g,
                                            const IndexingCategory& ss) {
  ModelFunctor h{g, ss, {}, {}, "graph_to_semisimplicial", -1};
  detail::require_tags(h, CategoryTag::Graph, CategoryTag::SemiSimplicial);
  detail::require_truncation(h.name, ss.cat.truncation() >= 1);
  ObjectId v0 = ss.cat.vertex_object();
  ObjectId e1{CategoryTag::SemiSimplicial, 1, {}};
  h.omap[g.cat.vertex_object()] = v0;
  h.omap[g.cat.edge_object(2)] = e1;
  h.mmap[g.cat.vertex_arrow(2, 1)] = MorphismId{v0, e1, {0}};
  h.mmap[g.cat.vertex_arrow(2, 2)] = MorphismId{v0, e1, {1}};
  return h;
}

/// Semi-simplicial into symmetric: same levels, same function data.
inline ModelFunctor semisimplicial_to_symmetric(const IndexingCategory& ss,
                                                const IndexingCategory& sym) {
  ModelFunctor h{ss, sym, {}, {}, "semisimplicial_to_symmetric", 0};
  detail::require_tags(h, CategoryTag::SemiSimplicial, CategoryTag::Symmetric);
  detail::require_truncation(h.name, sym.cat.truncation() >= ss.cat.truncation());
  for (const auto& o : ss.cat.objects()) h.omap[o] = ObjectId{CategoryTag::Symmetric, o.level, {}};
  for (const auto& m : ss.cat.all_morphisms())
    if (!ss.cat.is_identity(m)) h.mmap[m] = MorphismId{h.omap[m.src], h.omap[m.dst], m.data};
  return h;
}

/// Semi-simplicial into simplicial: same levels, same function data.
inline ModelFunctor semisimplicial_to_simplicial(const IndexingCategory& ss,
                                                 const IndexingCategory& s) {
  ModelFunctor h{ss, s, {}, {}, "semisimplicial_to_simplicial", 0};
  detail::require_tags(h, CategoryTag::SemiSimplicial, CategoryTag::Simplicial);
  detail::require_truncation(h.name, s.cat.truncation() >= ss.cat.truncation());
  for (const auto& o : ss.cat.objects()) h.omap[o] = ObjectId{CategoryTag::Simplicial, o.level, {}};
  for (const auto& m : ss.cat.all_morphisms())
    if (!ss.cat.is_identity(m)) h.mmap[m] = MorphismId{h.omap[m.src], h.omap[m.dst], m.data};
  return h;
}

/// Hypergraphs into broadcast shapes: an n-edge becomes an (n-1)-broadcast,
/// its first member the sender (the hub) and the rest the receivers.
inline ModelFunctor hypergraph_to_broadcast(const IndexingCategory& hy,
                                            const IndexingCategory& t) {
  ModelFunctor h{hy, t, {}, {}, "hypergraph_to_broadcast", -1};
  detail::require_tags(h, CategoryTag::Hypergraph, CategoryTag::Broadcast);
  detail::require_truncation(h.name, t.cat.truncation() >= hy.cat.truncation() - 1);
  ObjectId hub = t.cat.vertex_object();
  h.omap[hy.cat.vertex_object()] = hub;
  for (int n = 1; n <= hy.cat.truncation(); ++n) {
    ObjectId level{CategoryTag::Broadcast, n - 1, {}};
    h.omap[hy.cat.edge_object(n)] = level;
    h.mmap[hy.cat.vertex_arrow(n, 1)] = MorphismId{hub, level, {0}};
    for (int i = 2; i <= n; ++i)
      h.mmap[hy.cat.vertex_arrow(n, i)] = MorphismId{hub, level, {i - 1}};
  }
  return h;
}

/// The designated basic vocabulary of `idx`, as a functor out of a basic
/// category; restriction along it produces underlying basic graphs.
inline ModelFunctor basic_inclusion(const IndexingCategory& basic, const IndexingCategory& idx) {
  ModelFunctor h{basic, idx, {}, {}, "basic_inclusion", std::nullopt};
  if (basic.cat.tag() != CategoryTag::Basic)
    throw std::invalid_argument(h.name + ": source must be the basic category");
  detail::require_truncation(h.name, basic.cat.truncation() <= idx.cat.truncation());
  h.omap[basic.cat.vertex_object()] = idx.vertex;
  std::set<int> shifts;
  for (int n = 2; n <= basic.cat.truncation(); ++n) {
    h.omap[basic.cat.edge_object(n)] = idx.edge_image(n);
    shifts.insert(idx.edge_image(n).level - n);
    for (int i = 1; i <= n; ++i)
      h.mmap[basic.cat.vertex_arrow(n, i)] = idx.vertex_sel_image(n, i);
  }
  if (shifts.size() == 1) h.level_shift = *shifts.begin();
  return h;
}

// ---------------------------------------------------------------------------
// Restriction.

/// R_h: cells at a source object i are the target presheaf's cells at h(i);
/// the action of m is the action of h(m).
inline Presheaf restrict_presheaf(const ModelFunctor& h, const Presheaf& G) {
  if (!(G.cat() == h.target.cat))
    throw std::invalid_argument("restrict_presheaf: presheaf not over the target category");
  std::map<ObjectId, std::vector<std::string>> cells;
  auto sobs = h.source.cat.objects();
  for (const auto& i : sobs) cells[i] = G.labels(h.ap(i));
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& a : sobs)
    for (const auto& b : sobs)
      for (const auto& m : h.source.cat.hom(a, b)) {
        if (h.source.cat.is_identity(m)) continue;
        int n_dst = static_cast<int>(cells[b].size());
        if (n_dst == 0) continue;
        MorphismId hm = h.ap(m);
        std::vector<int> t(static_cast<std::size_t>(n_dst));
        for (int c = 0; c < n_dst; ++c) t[static_cast<std::size_t>(c)] = G.apply(hm, c);
        action[m] = std::move(t);
      }
  return Presheaf(h.source, std::move(cells), std::move(action));
}

/// R_h on a map beta between target presheaves: component at i is beta's
/// component at h(i).
inline PresheafMorphism restrict_morphism(const ModelFunctor& h, const PresheafMorphism& beta) {
  PresheafMorphism out;
  for (const auto& i : h.source.cat.objects()) out.component[i] = beta.at(h.ap(i));
  return out;
}

// ---------------------------------------------------------------------------
// Completeness of Kan extensions under truncation.

/// Which target levels of a Kan extension are final.  For source categories
/// whose presheaves are exact finite objects (graphs, hypergraphs, basic
/// higher graphs, semi-simplicial sets) everything is final.  For window
/// sources (simplicial, symmetric, broadcast, preorder) a level is flagged
/// false when cells above the source truncation could still contribute there;
/// the computed cells are then a lower layer, not the full answer.
struct KanCompleteness {
  bool all_exact = true;
  std::map<int, bool> exact_level;
  std::string note;
};

inline KanCompleteness kan_completeness(const ModelFunctor& h, bool left) {
  KanCompleteness out;
  CategoryTag stag = h.source.cat.tag(), ttag = h.target.cat.tag();
  for (const auto& j : h.target.cat.objects()) out.exact_level[j.level] = true;
  bool exact_source = stag == CategoryTag::Graph || stag == CategoryTag::Hypergraph ||
                      stag == CategoryTag::Basic || stag == CategoryTag::SemiSimplicial;
  if (exact_source) {
    out.note = "source presheaves are exact finite objects; all computed levels are final";
    return out;
  }
  int strunc = h.source.cat.truncation(), ttrunc = h.target.cat.truncation();
  for (auto& [lvl, flag] : out.exact_level) {
    for (int s = strunc + 1; s <= strunc + ttrunc + 2 && flag; ++s) {
      bool reachable = true;  // unknown level shift: assume the worst
      if (h.level_shift) {
        int mapped = s + *h.level_shift;
        reachable = left ? FiniteCategory::hom_nonempty_by_level(ttag, lvl, mapped)
                         : FiniteCategory::hom_nonempty_by_level(ttag, mapped, lvl);
      }
      if (reachable) {
        flag = false;
        out.all_exact = false;
      }
    }
  }
  out.note = out.all_exact
                 ? "no level above the source truncation can reach the computed levels"
                 : "source presheaf is a truncation window; levels flagged false could receive "
                   "contributions from source cells above the truncation";
  return out;
}

// ---------------------------------------------------------------------------
// Left Kan extension.

/// One generator of L_h F at target object j: a source cell x at i pushed
/// along g: j -> h(i).  The stored cell is the equivalence class of such
/// triples; `reps` keeps the least member of each class.
struct LeftKanElement {
  ObjectId i;
  MorphismId g;  // j -> h(i)
  int x = 0;
};

struct LeftKanResult {
  Presheaf presheaf;      // over the target category
  PresheafMorphism unit;  // F -> restrict_presheaf(h, presheaf)
  std::map<ObjectId, std::vector<LeftKanElement>> reps;
  std::map<ObjectId, std::map<std::tuple<ObjectId, std::vector<int>, int>, int>> element_class;
  KanCompleteness completeness;

  int class_of(const ObjectId& j, const ObjectId& i, const MorphismId& g, int x) const {
    return element_class.at(j).at({i, g.data, x});
  }
};

inline LeftKanResult left_kan(const ModelFunctor& h, const Presheaf& F,
                              std::uint64_t budget = 1'000'000) {
  if (!(F.cat() == h.source.cat))
    throw std::invalid_argument("left_kan: presheaf not over the source category");
  const FiniteCategory& tcat = h.target.cat;
  const FiniteCategory& scat = h.source.cat;
  auto sobs = scat.objects();
  auto tobs = tcat.objects();

  std::vector<MorphismId> smors;
  for (const auto& m : scat.all_morphisms())
    if (!scat.is_identity(m)) smors.push_back(m);

  LeftKanResult out{Presheaf(h.target), {}, {}, {}, kan_completeness(h, true)};
  std::map<ObjectId, std::vector<std::string>> cells;
  std::uint64_t total_elements = 0;

  for (const auto& j : tobs) {
    // Generators in canonical order (i, g.data, x): enumeration order is it.
    std::vector<LeftKanElement> elems;
    auto& index_of = out.element_class[j];
    for (const auto& i : sobs) {
      int fn = F.cell_count(i);
      if (fn == 0) continue;
      for (const auto& g : tcat.hom(j, h.ap(i)))
        for (int x = 0; x < fn; ++x) {
          index_of[{i, g.data, x}] = static_cast<int>(elems.size());
          elems.push_back(LeftKanElement{i, g, x});
        }
    }
    total_elements += elems.size();
    if (total_elements > budget) throw BudgetExceeded(total_elements);

    // Union-find over generators.
    std::vector<int> parent(elems.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[static_cast<std::size_t>(a)] != a) {
        parent[static_cast<std::size_t>(a)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        a = parent[static_cast<std::size_t>(a)];
      }
      return a;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    // For u: i' -> i and g': j -> h(i'), the generator (i, h(u).g', x) glues
    // with (i', g', F(u)(x)).
    for (const auto& u : smors) {
      if (F.cell_count(u.dst) == 0 && F.cell_count(u.src) == 0) continue;
      MorphismId hu = h.ap(u);
      for (const auto& gp : tcat.hom(j, h.ap(u.src))) {
        MorphismId glued = tcat.compose(hu, gp);  // j -> h(i)  (i = u.dst)
        for (int x = 0; x < F.cell_count(u.dst); ++x) {
          auto lhs = index_of.find({u.dst, glued.data, x});
          auto rhs = index_of.find({u.src, gp.data, F.apply(u, x)});
          if (lhs == index_of.end() || rhs == index_of.end())
            throw std::logic_error("left_kan: generator escaped enumeration");
          unite(lhs->second, rhs->second);
        }
      }
    }

    // Classes ordered by least member; least members are canonical reps.
    std::map<int, std::vector<int>> members;  // root -> member positions
    for (int p = 0; p < static_cast<int>(elems.size()); ++p)
      members[find(p)].push_back(p);
    std::vector<LeftKanElement>& reps = out.reps[j];
    std::vector<std::string> labels;
    std::map<int, int> class_of_root;
    for (const auto& [root, ps] : members) {  // root == least member by construction
      class_of_root[root] = static_cast<int>(reps.size());
      reps.push_back(elems[static_cast<std::size_t>(ps.front())]);
      // Plain label when the class holds a generator along an identity; the
      // least such generator wins.  Otherwise qualify by the canonical rep.
      std::string label;
      for (int p : ps) {
        const LeftKanElement& e = elems[static_cast<std::size_t>(p)];
        if (tcat.is_identity(e.g)) {
          label = F.labels(e.i)[static_cast<std::size_t>(e.x)];
          break;
        }
      }
      if (label.empty()) {
        const LeftKanElement& r = reps.back();
        label = F.labels(r.i)[static_cast<std::size_t>(r.x)] + "@" + object_key(r.i) + ":" +
                (r.g.data.empty() ? "id" : detail::join_ints(r.g.data, '.'));
      }
      labels.push_back(std::move(label));
    }
    // Disambiguate any duplicate plain labels by their canonical rep.
    std::map<std::string, int> uses;
    for (const auto& l : labels) ++uses[l];
    for (std::size_t c = 0; c < labels.size(); ++c)
      if (uses[labels[c]] > 1) {
        const LeftKanElement& r = reps[c];
        labels[c] = F.labels(r.i)[static_cast<std::size_t>(r.x)] + "@" + object_key(r.i) + ":" +
                    (r.g.data.empty() ? "id" : detail::join_ints(r.g.data, '.'));
      }
    cells[j] = std::move(labels);
    // Rewrite element_class to class ids.
    for (auto& [key, pos] : index_of) pos = class_of_root[find(pos)];
  }

  // Actions: w: j' -> j sends the class of (i, g, x) to the class of
  // (i, g.w, x) at j'.
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& jp : tobs)
    for (const auto& j : tobs)
      for (const auto& w : tcat.hom(jp, j)) {
        if (tcat.is_identity(w)) continue;
        const auto& reps_j = out.reps[j];
        if (reps_j.empty()) continue;
        std::vector<int> t;
        t.reserve(reps_j.size());
        for (const auto& r : reps_j) {
          MorphismId moved = tcat.compose(r.g, w);  // j' -> h(i)
          t.push_back(out.class_of(jp, r.i, moved, r.x));
        }
        action[w] = std::move(t);
      }

  out.presheaf = Presheaf(h.target, std::move(cells), std::move(action));

  // Unit: x at i becomes the class of (i, identity, x) at h(i).
  for (const auto& i : sobs) {
    std::vector<int> comp(static_cast<std::size_t>(F.cell_count(i)));
    if (!comp.empty()) {
      MorphismId ident = tcat.identity(h.ap(i));
      for (int x = 0; x < F.cell_count(i); ++x)
        comp[static_cast<std::size_t>(x)] = out.class_of(h.ap(i), i, ident, x);
    }
    out.unit.component[i] = std::move(comp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Right Kan extension.

/// One slot of a compatible family at target object j: a source object with a
/// map g: h(i) -> j.  A cell of A_h F at j chooses one F(i)-cell per slot,
/// compatibly with every source morphism.
struct CommaSlot {
  ObjectId i;
  MorphismId g;  // h(i) -> j
};

struct RightKanResult {
  Presheaf presheaf;        // over the target category
  PresheafMorphism counit;  // restrict_presheaf(h, presheaf) -> F
  std::map<ObjectId, std::vector<CommaSlot>> slots;
  std::map<ObjectId, std::vector<std::vector<int>>> families;  // cell -> choice per slot
  std::map<ObjectId, std::map<std::vector<int>, int>> family_index;
  KanCompleteness completeness;
};

inline RightKanResult right_kan(const ModelFunctor& h, const Presheaf& F,
                                std::uint64_t budget = 1'000'000) {
  if (!(F.cat() == h.source.cat))
    throw std::invalid_argument("right_kan: presheaf not over the source category");
  const FiniteCategory& tcat = h.target.cat;
  const FiniteCategory& scat = h.source.cat;
  auto sobs = scat.objects();
  auto tobs = tcat.objects();

  std::vector<MorphismId> smors;
  for (const auto& m : scat.all_morphisms())
    if (!scat.is_identity(m)) smors.push_back(m);

  RightKanResult out{Presheaf(h.target), {}, {}, {}, {}, kan_completeness(h, false)};
  std::map<ObjectId, std::vector<std::string>> cells;
  std::uint64_t nodes = 0;

  for (const auto& j : tobs) {
    std::vector<CommaSlot>& slots = out.slots[j];
    std::map<std::pair<ObjectId, std::vector<int>>, int> slot_pos;
    for (const auto& i : sobs)
      for (const auto& g : tcat.hom(h.ap(i), j)) {
        slot_pos[{i, g.data}] = static_cast<int>(slots.size());
        slots.push_back(CommaSlot{i, g});
      }

    // Compatibility constraints: for u: i -> i' and g': h(i') -> j, the
    // choice at slot (i, g'.h(u)) must equal F(u) of the choice at (i', g').
    // Each constraint is checked as soon as both slots are assigned.
    struct Constraint {
      int dependent;  // slot (i, g'.h(u))
      int support;    // slot (i', g')
      MorphismId u;
    };
    std::vector<std::vector<Constraint>> check_at(slots.size());
    for (const auto& u : smors) {
      MorphismId hu = h.ap(u);
      for (const auto& gp : tcat.hom(h.ap(u.dst), j)) {
        MorphismId pulled = tcat.compose(gp, hu);  // h(i) -> j
        auto dep = slot_pos.find({u.src, pulled.data});
        auto sup = slot_pos.find({u.dst, gp.data});
        if (dep == slot_pos.end() || sup == slot_pos.end())
          throw std::logic_error("right_kan: slot escaped enumeration");
        int last = std::max(dep->second, sup->second);
        check_at[static_cast<std::size_t>(last)].push_back(
            Constraint{dep->second, sup->second, u});
      }
    }

    std::vector<std::vector<int>>& families = out.families[j];
    std::vector<int> choice(slots.size(), 0);
    auto consistent_at = [&](int p) {
      for (const auto& c : check_at[static_cast<std::size_t>(p)])
        if (choice[static_cast<std::size_t>(c.dependent)] !=
            F.apply(c.u, choice[static_cast<std::size_t>(c.support)]))
          return false;
      return true;
    };
    auto rec = [&](auto&& self, std::size_t p) -> void {
      if (++nodes > budget) throw BudgetExceeded(nodes);
      if (p == slots.size()) {
        families.push_back(choice);
        return;
      }
      int fn = F.cell_count(slots[p].i);
      for (int v = 0; v < fn; ++v) {
        choice[p] = v;
        if (consistent_at(static_cast<int>(p))) self(self, p + 1);
      }
      choice[p] = 0;
    };
    if (slots.empty()) {
      families.push_back({});
    } else {
      rec(rec, 0);
    }

    auto& findex = out.family_index[j];
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < families.size(); ++c) {
      findex[families[c]] = static_cast<int>(c);
      std::string label;
      if (slots.empty()) {
        label = "*";
      } else {
        for (std::size_t p = 0; p < slots.size(); ++p) {
          if (p) label += '|';
          label += F.labels(slots[p].i)[static_cast<std::size_t>(families[c][p])];
        }
      }
      labels.push_back(std::move(label));
    }
    cells[j] = std::move(labels);
  }

  // Actions: w: j' -> j turns a family y at j into the family at j' whose
  // choice at slot (i, g) is y's choice at slot (i, w.g).
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& jp : tobs)
    for (const auto& j : tobs)
      for (const auto& w : tcat.hom(jp, j)) {
        if (tcat.is_identity(w)) continue;
        const auto& fams = out.families[j];
        if (fams.empty()) continue;
        const auto& slots_jp = out.slots[jp];
        const auto& slots_j = out.slots[j];
        // Each slot (i, g) at j' pulls its value from slot (i, w.g) at j;
        // that position does not depend on the family, so resolve it once.
        std::vector<int> pull(slots_jp.size(), -1);
        for (std::size_t p = 0; p < slots_jp.size(); ++p) {
          MorphismId lifted = tcat.compose(w, slots_jp[p].g);  // h(i) -> j
          for (std::size_t q = 0; q < slots_j.size(); ++q)
            if (slots_j[q].i == slots_jp[p].i && slots_j[q].g.data == lifted.data) {
              pull[p] = static_cast<int>(q);
              break;
            }
          if (pull[p] < 0) throw std::logic_error("right_kan: reindexed slot missing");
        }
        std::vector<int> t;
        t.reserve(fams.size());
        for (const auto& y : fams) {
          std::vector<int> moved(slots_jp.size());
          for (std::size_t p = 0; p < slots_jp.size(); ++p)
            moved[p] = y[static_cast<std::size_t>(pull[p])];
          auto it = out.family_index[jp].find(moved);
          if (it == out.family_index[jp].end())
            throw std::logic_error("right_kan: reindexed family not compatible");
          t.push_back(it->second);
        }
        action[w] = std::move(t);
      }

  out.presheaf = Presheaf(h.target, std::move(cells), std::move(action));

  // Counit: at source object i, a family over h(i) projects to its choice at
  // the identity slot.
  for (const auto& i : sobs) {
    ObjectId hi = h.ap(i);
    MorphismId ident = tcat.identity(hi);
    const auto& slots_hi = out.slots[hi];
    int ident_pos = -1;
    for (std::size_t q = 0; q < slots_hi.size(); ++q)
      if (slots_hi[q].i == i && slots_hi[q].g.data == ident.data) {
        ident_pos = static_cast<int>(q);
        break;
      }
    const auto& fams = out.families[hi];
    std::vector<int> comp(fams.size());
    for (std::size_t c = 0; c < fams.size(); ++c) {
      if (ident_pos < 0) throw std::logic_error("right_kan: identity slot missing");
      comp[c] = fams[c][static_cast<std::size_t>(ident_pos)];
    }
    out.counit.component[i] = std::move(comp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adjunction plumbing: units, counits, adjuncts.

/// Counit of the left adjunction at G: L_h(R_h G) -> G, evaluating each class
/// representative (i, g, y) to G(g)(y).  `LRG` must be left_kan of
/// restrict_presheaf(h, G).
inline PresheafMorphism left_counit(const ModelFunctor& h, const Presheaf& G,
                                    const LeftKanResult& LRG) {
  PresheafMorphism out;
  for (const auto& [j, reps] : LRG.reps) {
    std::vector<int> comp(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      comp[c] = G.apply(reps[c].g, reps[c].x);
    out.component[j] = std::move(comp);
  }
  (void)h;
  return out;
}

/// Unit of the right adjunction at G: G -> A_h(R_h G), sending y at j to the
/// family whose choice at slot (i, g) is G(g)(y).  `ARG` must be right_kan of
/// restrict_presheaf(h, G).
inline PresheafMorphism right_unit(const ModelFunctor& h, const Presheaf& G,
                                   const RightKanResult& ARG) {
  PresheafMorphism out;
  for (const auto& j : h.target.cat.objects()) {
    const auto& slots = ARG.slots.at(j);
    std::vector<int> comp(static_cast<std::size_t>(G.cell_count(j)));
    for (int y = 0; y < G.cell_count(j); ++y) {
      std::vector<int> fam(slots.size());
      for (std::size_t p = 0; p < slots.size(); ++p)
        fam[p] = G.apply(slots[p].g, y);
      auto it = ARG.family_index.at(j).find(fam);
      if (it == ARG.family_index.at(j).end())
        throw std::logic_error("right_unit: induced family not compatible");
      comp[static_cast<std::size_t>(y)] = it->second;
    }
    out.component[j] = std::move(comp);
  }
  return out;
}

/// Left adjunct: turns alpha: F -> R_h G into L_h F -> G by evaluating each
/// class representative (i, g, x) to G(g)(alpha_i(x)).
inline PresheafMorphism to_left_adjunct(const ModelFunctor& h, const Presheaf& G,
                                        const LeftKanResult& LF, const PresheafMorphism& alpha) {
  PresheafMorphism out;
  for (const auto& [j, reps] : LF.reps) {
    std::vector<int> comp(reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      comp[c] = G.apply(reps[c].g, alpha.at(reps[c].i)[static_cast<std::size_t>(reps[c].x)]);
    out.component[j] = std::move(comp);
  }
  (void)h;
  return out;
}

/// Inverse of to_left_adjunct: beta: L_h F -> G becomes R_h(beta) after the
/// unit.
inline PresheafMorphism from_left_adjunct(const ModelFunctor& h, const LeftKanResult& LF,
                                          const PresheafMorphism& beta) {
  return compose_morphisms(restrict_morphism(h, beta), LF.unit);
}

/// Right adjunct: turns alpha: R_h G -> F into G -> A_h F by assembling, for
/// y at j, the family with choice alpha_i(G(g)(y)) at slot (i, g).
inline PresheafMorphism to_right_adjunct(const ModelFunctor& h, const Presheaf& G,
                                         const RightKanResult& AF, const PresheafMorphism& alpha) {
  PresheafMorphism out;
  for (const auto& j : h.target.cat.objects()) {
    const auto& slots = AF.slots.at(j);
    std::vector<int> comp(static_cast<std::size_t>(G.cell_count(j)));
    for (int y = 0; y < G.cell_count(j); ++y) {
      std::vector<int> fam(slots.size());
      for (std::size_t p = 0; p < slots.size(); ++p)
        fam[p] = alpha.at(slots[p].i)[static_cast<std::size_t>(G.apply(slots[p].g, y))];
      auto it = AF.family_index.at(j).find(fam);
      if (it == AF.family_index.at(j).end())
        throw std::logic_error("to_right_adjunct: induced family not compatible");
      comp[static_cast<std::size_t>(y)] = it->second;
    }
    out.component[j] = std::move(comp);
  }
  return out;
}

/// Inverse of to_right_adjunct: beta: G -> A_h F becomes the counit after
/// R_h(beta).
inline PresheafMorphism from_right_adjunct(const ModelFunctor& h, const RightKanResult& AF,
                                           const PresheafMorphism& beta) {
  return compose_morphisms(AF.counit, restrict_morphism(h, beta));
}

// ---------------------------------------------------------------------------
// Checkers.

struct AdjunctionReport {
  std::size_t hom_F_RG = 0;  // |Hom(F, R_h G)|
  std::size_t hom_LF_G = 0;  // |Hom(L_h F, G)|
  std::size_t hom_RG_F = 0;  // |Hom(R_h G, F)|
  std::size_t hom_G_AF = 0;  // |Hom(G, A_h F)|
  bool left_counts_equal = false;
  bool left_bijective = false;
  bool right_counts_equal = false;
  bool right_bijective = false;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Verifies both adjunctions on a concrete pair (F over the source, G over
/// the target): hom-set cardinalities agree and the adjunct maps are mutually
/// inverse bijections between the enumerated hom-sets.
inline AdjunctionReport check_adjunction(const ModelFunctor& h, const Presheaf& F,
                                         const Presheaf& G, std::uint64_t budget = 1'000'000) {
  AdjunctionReport report;
  Presheaf RG = restrict_presheaf(h, G);

  {
    LeftKanResult LF = left_kan(h, F, budget);
    auto side_I = enumerate_morphisms(F, RG, budget);
    auto side_J = enumerate_morphisms(LF.presheaf, G, budget);
    report.hom_F_RG = side_I.size();
    report.hom_LF_G = side_J.size();
    report.left_counts_equal = side_I.size() == side_J.size();
    if (!report.left_counts_equal)
      report.problems.push_back("left adjunction: hom-set sizes differ (" +
                                std::to_string(side_I.size()) + " vs " +
                                std::to_string(side_J.size()) + ")");
    std::set<PresheafMorphism> target_set(side_J.begin(), side_J.end());
    std::set<PresheafMorphism> image;
    bool fine = true;
    for (const auto& alpha : side_I) {
      PresheafMorphism beta = to_left_adjunct(h, G, LF, alpha);
      if (target_set.find(beta) == target_set.end()) {
        report.problems.push_back("left adjunction: adjunct of a morphism is not natural");
        fine = false;
        break;
      }
      if (!(from_left_adjunct(h, LF, beta) == alpha)) {
        report.problems.push_back("left adjunction: adjunct round-trip is not the identity");
        fine = false;
        break;
      }
      image.insert(beta);
    }
    report.left_bijective =
        fine && report.left_counts_equal && image.size() == side_J.size();
    if (fine && !report.left_bijective)
      report.problems.push_back("left adjunction: adjunct map is not a bijection");
  }

  {
    RightKanResult AF = right_kan(h, F, budget);
    auto side_I = enumerate_morphisms(RG, F, budget);
    auto side_J = enumerate_morphisms(G, AF.presheaf, budget);
    report.hom_RG_F = side_I.size();
    report.hom_G_AF = side_J.size();
    report.right_counts_equal = side_I.size() == side_J.size();
    if (!report.right_counts_equal)
      report.problems.push_back("right adjunction: hom-set sizes differ (" +
                                std::to_string(side_I.size()) + " vs " +
                                std::to_string(side_J.size()) + ")");
    std::set<PresheafMorphism> target_set(side_J.begin(), side_J.end());
    std::set<PresheafMorphism> image;
    bool fine = true;
    for (const auto& alpha : side_I) {
      PresheafMorphism beta = to_right_adjunct(h, G, AF, alpha);
      if (target_set.find(beta) == target_set.end()) {
        report.problems.push_back("right adjunction: adjunct of a morphism is not natural");
        fine = false;
        break;
      }
      if (!(from_right_adjunct(h, AF, beta) == alpha)) {
        report.problems.push_back("right adjunction: adjunct round-trip is not the identity");
        fine = false;
        break;
      }
      image.insert(beta);
    }
    report.right_bijective =
        fine && report.right_counts_equal && image.size() == side_J.size();
    if (fine && !report.right_bijective)
      report.problems.push_back("right adjunction: adjunct map is not a bijection");
  }
  return report;
}

struct TriangleReport {
  bool left_unit_triangle = false;    // adjunct of the unit is the identity on L_h F
  bool left_counit_triangle = false;  // co-adjunct of the counit is the identity on R_h G
  bool right_counit_triangle = false;
  bool right_unit_triangle = false;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Checks the triangle laws of both adjunctions on concrete instances.
inline TriangleReport triangle_identities(const ModelFunctor& h, const Presheaf& F,
                                          const Presheaf& G, std::uint64_t budget = 1'000'000) {
  TriangleReport report;
  Presheaf RG = restrict_presheaf(h, G);

  LeftKanResult LF = left_kan(h, F, budget);
  report.left_unit_triangle =
      to_left_adjunct(h, LF.presheaf, LF, LF.unit) == identity_morphism(LF.presheaf);
  if (!report.left_unit_triangle)
    report.problems.push_back("left adjunction: unit triangle fails on F");

  LeftKanResult LRG = left_kan(h, RG, budget);
  report.left_counit_triangle =
      from_left_adjunct(h, LRG, left_counit(h, G, LRG)) == identity_morphism(RG);
  if (!report.left_counit_triangle)
    report.problems.push_back("left adjunction: counit triangle fails on G");

  RightKanResult AF = right_kan(h, F, budget);
  report.right_counit_triangle =
      to_right_adjunct(h, AF.presheaf, AF, AF.counit) == identity_morphism(AF.presheaf);
  if (!report.right_counit_triangle)
    report.problems.push_back("right adjunction: counit triangle fails on F");

  RightKanResult ARG = right_kan(h, RG, budget);
  report.right_unit_triangle =
      from_right_adjunct(h, ARG, right_unit(h, G, ARG)) == identity_morphism(RG);
  if (!report.right_unit_triangle)
    report.problems.push_back("right adjunction: unit triangle fails on G");
  return report;
}

}  // namespace highergraph
