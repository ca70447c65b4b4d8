#pragma once
// Presheaves over the shape categories: the single data structure behind all
// model kinds in this library.
//
// A presheaf assigns to every object of its indexing category a finite list
// of labeled cells and to every morphism m: a -> b a function running the
// other way, F(m): F(b) -> F(a), stored as an index table.  Graphs,
// hypergraphs and the simplex-flavored models only differ in which indexing
// category they use and how their constructors fill these tables.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "highergraph/category.hpp"

namespace highergraph {

inline std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::to_string(k);
  return out;
}

class Presheaf {
 public:
  /// Builds a presheaf from per-object cell labels and per-morphism action
  /// tables.  `action[m][k]` is the index at m.src of the image of the k-th
  /// cell at m.dst.  Objects missing from `cells` are taken to be empty;
  /// identity entries and tables of empty objects are dropped.  No validity
  /// check happens here; see validate_presheaf.
  Presheaf(IndexingCategory index, std::map<ObjectId, std::vector<std::string>> cells,
           std::map<MorphismId, std::vector<int>> action)
      : index_(std::move(index)), cells_(std::move(cells)), action_(std::move(action)) {
    for (const auto& o : index_.cat.objects())
      cells_.try_emplace(o);
    std::erase_if(action_, [&](const auto& entry) {
      const MorphismId& m = entry.first;
      if (index_.cat.valid_morphism(m) && index_.cat.is_identity(m)) return true;
      auto it = cells_.find(m.dst);
      return it != cells_.end() && it->second.empty() && entry.second.empty();
    });
  }

  /// Empty presheaf over the given indexing category.
  explicit Presheaf(IndexingCategory index) : Presheaf(std::move(index), {}, {}) {}

  const IndexingCategory& index() const { return index_; }
  const FiniteCategory& cat() const { return index_.cat; }

  int cell_count(const ObjectId& o) const {
    auto it = cells_.find(o);
    return it == cells_.end() ? 0 : static_cast<int>(it->second.size());
  }

  const std::vector<std::string>& labels(const ObjectId& o) const {
    auto it = cells_.find(o);
    if (it == cells_.end()) throw std::invalid_argument("labels: unknown object " + object_key(o));
    return it->second;
  }

  bool has_table(const MorphismId& m) const { return action_.find(m) != action_.end(); }

  const std::vector<int>& table(const MorphismId& m) const {
    auto it = action_.find(m);
    if (it == action_.end())
      throw std::invalid_argument("no action table for " + morphism_key(m));
    return it->second;
  }

  /// The contravariant action: `cell` lives at m.dst, the result at m.src.
  int apply(const MorphismId& m, int cell) const {
    if (cell < 0 || cell >= cell_count(m.dst))
      throw std::out_of_range("apply: cell index out of range at " + object_key(m.dst));
    if (index_.cat.is_identity(m)) return cell;
    const auto& t = table(m);
    if (cell >= static_cast<int>(t.size()))
      throw std::out_of_range("apply: action table too short for " + morphism_key(m));
    return t[static_cast<std::size_t>(cell)];
  }

  const std::map<ObjectId, std::vector<std::string>>& all_cells() const { return cells_; }
  const std::map<MorphismId, std::vector<int>>& all_actions() const { return action_; }

  /// Largest geometric dimension carrying at least one cell, or -1 when the
  /// presheaf is empty.  An n-simplex level counts as dimension n; an E_n
  /// edge roster counts as n - 1 (an arity-n edge spans n vertices).
  int dimension() const {
    bool marker = index_.cat.marker_encoded();
    int dim = -1;
    for (const auto& [o, ls] : cells_)
      if (!ls.empty()) dim = std::max(dim, marker && o.level > 0 ? o.level - 1 : o.level);
    return dim;
  }

  friend bool operator==(const Presheaf& a, const Presheaf& b) {
    return a.index_.cat == b.index_.cat && a.index_.vertex == b.index_.vertex &&
           a.index_.edge == b.index_.edge && a.index_.vertex_sel == b.index_.vertex_sel &&
           a.cells_ == b.cells_ && a.action_ == b.action_;
  }

 private:
  IndexingCategory index_;
  std::map<ObjectId, std::vector<std::string>> cells_;
  std::map<MorphismId, std::vector<int>> action_;
};

/// Positional comparison that ignores labels: same category, same cell counts,
/// same action tables.
inline bool same_shape(const Presheaf& a, const Presheaf& b) {
  if (!(a.cat() == b.cat())) return false;
  for (const auto& o : a.cat().objects())
    if (a.cell_count(o) != b.cell_count(o)) return false;
  return a.all_actions() == b.all_actions();
}

/// One violated face identity d_i(d_j(x)) == d_(j-1)(d_i(x)), witnessed by the
/// cell x at the given level.
struct FaceIdentityIssue {
  int level = 0;  // level of the witness cell
  int i = 0;
  int j = 0;  // i < j
  int cell = 0;
  std::string label;
};

struct ValidationReport {
  std::vector<std::string> structure_problems;    // missing tables, bad lengths, ranges, labels
  std::vector<std::string> composition_problems;  // F(g.f) != F(f).F(g), with cell witnesses
  std::vector<FaceIdentityIssue> face_identity_problems;

  bool ok() const {
    return structure_problems.empty() && composition_problems.empty() &&
           face_identity_problems.empty();
  }

  std::vector<std::string> all_problems() const {
    std::vector<std::string> out = structure_problems;
    out.insert(out.end(), composition_problems.begin(), composition_problems.end());
    for (const auto& f : face_identity_problems)
      out.push_back("face identity d_" + std::to_string(f.i) + " d_" + std::to_string(f.j) +
                    " != d_" + std::to_string(f.j - 1) + " d_" + std::to_string(f.i) +
                    " on cell '" + f.label + "' at level " + std::to_string(f.level));
    return out;
  }
};

/// The coface [m-1] -> [m] that skips value `i`.
inline MorphismId coface(CategoryTag tag, int m, int i) {
  ObjectId src{tag, m - 1, {}}, dst{tag, m, {}};
  std::vector<int> data;
  for (int v = 0; v <= m; ++v)
    if (v != i) data.push_back(v);
  return MorphismId{src, dst, data};
}

/// Full functoriality audit: every non-identity morphism must carry a table of
/// the right length and range, and every composable pair must satisfy
/// F(g after f) = F(f) after F(g).  For the simplex-shaped categories the
/// report additionally lists violated face identities with their (i, j, cell)
/// witnesses, which is the same condition phrased through the cofaces.
inline ValidationReport validate_presheaf(const Presheaf& F) {
  ValidationReport report;
  const FiniteCategory& cat = F.cat();
  auto objects = cat.objects();

  for (const auto& o : objects) {
    std::set<std::string> seen;
    for (const auto& label : F.labels(o))
      if (!seen.insert(label).second)
        report.structure_problems.push_back("duplicate cell label '" + label + "' at " +
                                            object_key(o));
  }

  bool tables_ok = true;
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& m : cat.hom(a, b)) {
        if (cat.is_identity(m)) continue;
        int n_dst = F.cell_count(b), n_src = F.cell_count(a);
        if (n_dst == 0) {
          if (F.has_table(m) && !F.table(m).empty()) {
            report.structure_problems.push_back("action table for " + morphism_key(m) +
                                                " is nonempty although " + object_key(b) +
                                                " has no cells");
            tables_ok = false;
          }
          continue;
        }
        if (!F.has_table(m)) {
          report.structure_problems.push_back("missing action table for " + morphism_key(m));
          tables_ok = false;
          continue;
        }
        const auto& t = F.table(m);
        if (static_cast<int>(t.size()) != n_dst) {
          report.structure_problems.push_back(
              "action table for " + morphism_key(m) + " has length " + std::to_string(t.size()) +
              ", expected " + std::to_string(n_dst));
          tables_ok = false;
          continue;
        }
        for (int k = 0; k < n_dst; ++k)
          if (t[static_cast<std::size_t>(k)] < 0 || t[static_cast<std::size_t>(k)] >= n_src) {
            report.structure_problems.push_back(
                "action table for " + morphism_key(m) + " sends cell " + std::to_string(k) +
                " to out-of-range index " + std::to_string(t[static_cast<std::size_t>(k)]));
            tables_ok = false;
          }
      }
  // Stray tables for morphisms outside the category.
  for (const auto& [m, t] : F.all_actions())
    if (!cat.valid_morphism(m))
      report.structure_problems.push_back("action table for unknown morphism " + morphism_key(m));

  if (!tables_ok) return report;

  for (const auto& a : objects)
    for (const auto& b : objects) {
      auto fs = cat.hom(a, b);
      if (fs.empty()) continue;
      for (const auto& c : objects) {
        if (F.cell_count(c) == 0) continue;
        auto gs = cat.hom(b, c);
        for (const auto& f : fs)
          for (const auto& g : gs) {
            if (cat.is_identity(f) || cat.is_identity(g)) continue;
            MorphismId gf = cat.compose(g, f);
            for (int x = 0; x < F.cell_count(c); ++x) {
              int via_pair = F.apply(f, F.apply(g, x));
              int direct = F.apply(gf, x);
              if (via_pair != direct)
                report.composition_problems.push_back(
                    "actions disagree on cell '" + F.labels(c)[static_cast<std::size_t>(x)] +
                    "' at " + object_key(c) + ": " + morphism_key(gf) + " vs " + morphism_key(f) +
                    " after " + morphism_key(g));
            }
          }
      }
    }

  CategoryTag tag = cat.tag();
  if (tag == CategoryTag::SemiSimplicial || tag == CategoryTag::Simplicial) {
    for (int m = 2; m <= cat.truncation(); ++m) {
      ObjectId top{tag, m, {}};
      if (F.cell_count(top) == 0) continue;
      for (int j = 1; j <= m; ++j)
        for (int i = 0; i < j; ++i) {
          const auto& dj = F.table(coface(tag, m, j));
          const auto& di_top = F.table(coface(tag, m, i));
          const auto& di = F.table(coface(tag, m - 1, i));
          const auto& djm1 = F.table(coface(tag, m - 1, j - 1));
          for (int x = 0; x < F.cell_count(top); ++x) {
            int lhs = di[static_cast<std::size_t>(dj[static_cast<std::size_t>(x)])];
            int rhs = djm1[static_cast<std::size_t>(di_top[static_cast<std::size_t>(x)])];
            if (lhs != rhs)
              report.face_identity_problems.push_back(FaceIdentityIssue{
                  m, i, j, x, F.labels(top)[static_cast<std::size_t>(x)]});
          }
        }
    }
  }
  return report;
}

/// A map between two presheaves over the same category: one function per
/// object, stored as index vectors (component[o][k] = target cell index).
struct PresheafMorphism {
  std::map<ObjectId, std::vector<int>> component;

  friend bool operator==(const PresheafMorphism&, const PresheafMorphism&) = default;
  friend bool operator<(const PresheafMorphism& x, const PresheafMorphism& y) {
    return x.component < y.component;
  }

  const std::vector<int>& at(const ObjectId& o) const {
    auto it = component.find(o);
    if (it == component.end())
      throw std::invalid_argument("morphism has no component at " + object_key(o));
    return it->second;
  }
};

inline PresheafMorphism identity_morphism(const Presheaf& F) {
  PresheafMorphism out;
  for (const auto& [o, labels] : F.all_cells()) {
    std::vector<int> ident(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) ident[k] = static_cast<int>(k);
    out.component[o] = std::move(ident);
  }
  return out;
}

/// beta after alpha, componentwise.
inline PresheafMorphism compose_morphisms(const PresheafMorphism& beta,
                                          const PresheafMorphism& alpha) {
  PresheafMorphism out;
  for (const auto& [o, a] : alpha.component) {
    const auto& b = beta.at(o);
    std::vector<int> c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = b[static_cast<std::size_t>(a[k])];
    out.component[o] = std::move(c);
  }
  return out;
}

/// Naturality audit of alpha: F -> G; empty result means natural.
inline std::vector<std::string> check_naturality(const Presheaf& F, const Presheaf& G,
                                                 const PresheafMorphism& alpha) {
  std::vector<std::string> problems;
  const FiniteCategory& cat = F.cat();
  if (!(cat == G.cat())) {
    problems.push_back("presheaves live over different categories");
    return problems;
  }
  for (const auto& [o, labels] : F.all_cells()) {
    auto it = alpha.component.find(o);
    if (it == alpha.component.end()) {
      problems.push_back("missing component at " + object_key(o));
      continue;
    }
    if (it->second.size() != labels.size()) {
      problems.push_back("component at " + object_key(o) + " has wrong length");
      continue;
    }
    for (int v : it->second)
      if (v < 0 || v >= G.cell_count(o))
        problems.push_back("component at " + object_key(o) + " hits out-of-range cell");
  }
  if (!problems.empty()) return problems;
  auto objects = cat.objects();
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (const auto& m : cat.hom(a, b)) {
        if (cat.is_identity(m)) continue;
        for (int x = 0; x < F.cell_count(b); ++x) {
          int lhs = alpha.at(a)[static_cast<std::size_t>(F.apply(m, x))];
          int rhs = G.apply(m, alpha.at(b)[static_cast<std::size_t>(x)]);
          if (lhs != rhs)
            problems.push_back("naturality fails at " + morphism_key(m) + " on cell '" +
                               F.labels(b)[static_cast<std::size_t>(x)] + "'");
        }
      }
  return problems;
}

/// Every natural transformation F -> G, in lexicographic component order.
/// `budget` caps the number of candidate cell assignments the search tries;
/// naturality pruning fires as soon as both cells a constraint mentions are
/// assigned, so spaces far larger than the budget often still finish.
inline std::vector<PresheafMorphism> enumerate_morphisms(const Presheaf& F, const Presheaf& G,
                                                         std::uint64_t budget = 1'000'000) {
  if (!(F.cat() == G.cat()))
    throw std::invalid_argument("enumerate_morphisms: different categories");
  const FiniteCategory& cat = F.cat();
  auto objects = cat.objects();

  // The a-priori candidate space (prod over objects of |G(o)|^|F(o)|), kept
  // only for the budget error message.
  long double space = 1.0L;
  for (const auto& o : objects) {
    int fn = F.cell_count(o), gn = G.cell_count(o);
    if (fn > 0 && gn == 0) return {};
    for (int k = 0; k < fn && space <= static_cast<long double>(UINT64_MAX) / 2; ++k)
      space *= static_cast<long double>(gn);
  }
  std::uint64_t estimate = space > static_cast<long double>(UINT64_MAX) / 2
                               ? UINT64_MAX / 2
                               : static_cast<std::uint64_t>(space);

  // One search position per F-cell, objects in roster order.
  std::map<ObjectId, std::size_t> first_pos;
  std::vector<std::pair<ObjectId, int>> slots;
  for (const auto& o : objects) {
    first_pos[o] = slots.size();
    for (int x = 0; x < F.cell_count(o); ++x) slots.emplace_back(o, x);
  }

  // Naturality constraints G(m)(beta_b(x)) == beta_a(F(m)(x)), attached to
  // the later of the two positions each one mentions.
  struct Check {
    MorphismId m;
    int x;        // cell at m.dst
    int src_idx;  // F(m)(x), a cell at m.src
  };
  std::vector<std::vector<Check>> check_at(slots.size());
  for (const auto& a : objects)
    for (const auto& b : objects)
      for (auto& m : cat.hom(a, b)) {
        if (cat.is_identity(m)) continue;
        for (int x = 0; x < F.cell_count(b); ++x) {
          int sx = F.apply(m, x);
          std::size_t sp = first_pos[a] + static_cast<std::size_t>(sx);
          std::size_t dp = first_pos[b] + static_cast<std::size_t>(x);
          check_at[std::max(sp, dp)].push_back({m, x, sx});
        }
      }

  std::vector<PresheafMorphism> found;
  PresheafMorphism cur;
  for (const auto& o : objects) cur.component[o] = std::vector<int>(F.labels(o).size(), 0);
  std::uint64_t visited = 0;

  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == slots.size()) {
      found.push_back(cur);
      return;
    }
    const auto& [o, x] = slots[p];
    std::vector<int>& comp = cur.component[o];
    for (int y = 0; y < G.cell_count(o); ++y) {
      if (++visited > budget) throw BudgetExceeded(estimate);
      comp[static_cast<std::size_t>(x)] = y;
      bool ok = true;
      for (const auto& c : check_at[p]) {
        int lhs = cur.at(c.m.src)[static_cast<std::size_t>(c.src_idx)];
        int rhs = G.apply(c.m, cur.at(c.m.dst)[static_cast<std::size_t>(c.x)]);
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, p + 1);
    }
  };
  rec(rec, 0);
  return found;
}

/// Cells that arise as images of the action along some level-decreasing
/// morphism; in the simplex-flavored categories these are the degenerate
/// cells.  Categories without level-decreasing morphisms report all-false.
inline std::map<ObjectId, std::vector<bool>> degenerate_cells(const Presheaf& F) {
  std::map<ObjectId, std::vector<bool>> out;
  const FiniteCategory& cat = F.cat();
  auto objects = cat.objects();
  for (const auto& o : objects)
    out[o] = std::vector<bool>(static_cast<std::size_t>(F.cell_count(o)), false);
  for (const auto& o : objects) {
    if (F.cell_count(o) == 0) continue;
    for (const auto& lower : objects) {
      if (lower.level >= o.level) continue;
      for (const auto& u : cat.hom(o, lower))  // u: o -> lower, acts F(lower) -> F(o)
        for (int y = 0; y < F.cell_count(lower); ++y)
          out[o][static_cast<std::size_t>(F.apply(u, y))] = true;
    }
  }
  return out;
}

inline std::map<ObjectId, int> nondegenerate_counts(const Presheaf& F) {
  std::map<ObjectId, int> out;
  for (auto& [o, flags] : degenerate_cells(F)) {
    int n = 0;
    for (bool d : flags)
      if (!d) ++n;
    out[o] = n;
  }
  return out;
}

/// The presheaf represented by `o`: cells at o' are hom(o', o), acting by
/// precomposition.  Useful as a test probe; maps out of it count the cells
/// of the target at `o`.
inline Presheaf representable_presheaf(const IndexingCategory& index, const ObjectId& o) {
  const FiniteCategory& cat = index.cat;
  std::map<ObjectId, std::vector<std::string>> cells;
  std::map<ObjectId, std::vector<MorphismId>> homs;
  for (const auto& a : cat.objects()) {
    homs[a] = cat.hom(a, o);
    std::vector<std::string> labels;
    for (const auto& g : homs[a])
      labels.push_back(g.data.empty() ? "id" : detail::join_ints(g.data, '.'));
    cells[a] = std::move(labels);
  }
  std::map<MorphismId, std::vector<int>> action;
  auto index_of = [&](const ObjectId& a, const MorphismId& g) {
    const auto& list = homs[a];
    for (std::size_t k = 0; k < list.size(); ++k)
      if (list[k] == g) return static_cast<int>(k);
    throw std::logic_error("representable: composite escaped hom enumeration");
  };
  for (const auto& a : cat.objects())
    for (const auto& b : cat.objects())
      for (const auto& m : cat.hom(a, b)) {
        if (cat.is_identity(m)) continue;
        std::vector<int> t;
        for (const auto& g : homs[b]) t.push_back(index_of(a, cat.compose(g, m)));
        action[m] = std::move(t);
      }
  return Presheaf(index, std::move(cells), std::move(action));
}

/// Reorders cells objectwise by label (ties by original position) and rewrites
/// all tables accordingly.  Serialization uses this to make byte output
/// independent of construction order.
inline Presheaf canonicalize(const Presheaf& F) {
  std::map<ObjectId, std::vector<int>> perm;      // new index -> old index
  std::map<ObjectId, std::vector<int>> inverse;   // old index -> new index
  std::map<ObjectId, std::vector<std::string>> cells;
  for (const auto& [o, labels] : F.all_cells()) {
    std::vector<int> order(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      return labels[static_cast<std::size_t>(x)] < labels[static_cast<std::size_t>(y)];
    });
    std::vector<int> inv(labels.size());
    std::vector<std::string> sorted;
    for (std::size_t k = 0; k < order.size(); ++k) {
      inv[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
      sorted.push_back(labels[static_cast<std::size_t>(order[k])]);
    }
    perm[o] = std::move(order);
    inverse[o] = std::move(inv);
    cells[o] = std::move(sorted);
  }
  std::map<MorphismId, std::vector<int>> action;
  for (const auto& [m, t] : F.all_actions()) {
    const auto& p_dst = perm[m.dst];
    const auto& inv_src = inverse[m.src];
    std::vector<int> nt(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
      nt[k] = inv_src[static_cast<std::size_t>(t[static_cast<std::size_t>(p_dst[k])])];
    action[m] = std::move(nt);
  }
  return Presheaf(F.index(), std::move(cells), std::move(action));
}

}  // namespace highergraph
