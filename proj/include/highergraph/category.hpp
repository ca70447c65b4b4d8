#pragma once
// Finite shape categories underlying the network models in this library.
//
// Every model kind (graph, hypergraph, semi-simplicial set, ...) is stored as
// a set-valued contravariant functor on one of the small categories defined
// here.  A category value knows its object roster (bounded by a truncation
// level), enumerates hom-sets in a fixed canonical order, and composes
// morphisms.  Objects and morphisms are encoded as plain integer data so that
// values order deterministically and serialize verbatim.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace highergraph {

/// Which built-in shape category a value belongs to.
enum class CategoryTag {
  Graph,           // objects V, E2; two arrows V -> E2 selecting source/target
  Hypergraph,      // V and E_n (n >= 1); n arrows V -> E_n selecting members
  SemiSimplicial,  // objects [n]; strictly increasing maps
  Simplicial,      // objects [n]; non-decreasing maps
  Symmetric,       // objects u_n = {0..n}; all functions
  Broadcast,       // objects (n) = hub plus n receivers; hub-preserving or constant maps
  Preorder,        // finite linear preorders, stored as ordered block compositions
  Basic,           // V and E_n (n >= 2) only; the common core of all the above
};

inline const char* tag_name(CategoryTag t) {
  switch (t) {
    case CategoryTag::Graph: return "graph";
    case CategoryTag::Hypergraph: return "hypergraph";
    case CategoryTag::SemiSimplicial: return "semisimplicial";
    case CategoryTag::Simplicial: return "simplicial";
    case CategoryTag::Symmetric: return "symmetric";
    case CategoryTag::Broadcast: return "broadcast";
    case CategoryTag::Preorder: return "preorder";
    case CategoryTag::Basic: return "basic";
  }
  return "?";
}

inline std::optional<CategoryTag> tag_from_name(std::string_view s) {
  for (CategoryTag t : {CategoryTag::Graph, CategoryTag::Hypergraph,
                        CategoryTag::SemiSimplicial, CategoryTag::Simplicial,
                        CategoryTag::Symmetric, CategoryTag::Broadcast,
                        CategoryTag::Preorder, CategoryTag::Basic}) {
    if (s == tag_name(t)) return t;
  }
  return std::nullopt;
}

/// An object of a shape category.  `level` is 0 for V, n for E_n, and n for
/// the n-th object of the graded categories.  Preorder objects carry their
/// ordered block sizes in `blocks` (sum of blocks == level + 1); every other
/// category leaves `blocks` empty.
struct ObjectId {
  CategoryTag tag{};
  int level = 0;
  std::vector<int> blocks;

  friend bool operator==(const ObjectId&, const ObjectId&) = default;
  friend bool operator<(const ObjectId& a, const ObjectId& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    if (a.level != b.level) return a.level < b.level;
    return a.blocks < b.blocks;
  }
};

/// A morphism of a shape category.  For Graph/Hypergraph/Basic, `data` is
/// empty for an identity and `{i}` for the i-th vertex arrow V -> E_n
/// (1-based).  For the graded categories, `data` lists the image of each
/// position of the source object, so `data.size() == src.level + 1` and the
/// identity is `{0, 1, ..., level}`.
struct MorphismId {
  ObjectId src;
  ObjectId dst;
  std::vector<int> data;

  friend bool operator==(const MorphismId&, const MorphismId&) = default;
  friend bool operator<(const MorphismId& a, const MorphismId& b) {
    if (a.src != b.src) return a.src < b.src;
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.data < b.data;
  }
};

namespace detail {

inline std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out.push_back(sep);
    out += std::to_string(v[k]);
  }
  return out;
}

inline std::optional<std::vector<int>> parse_ints(std::string_view s, char sep) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    std::string_view piece = s.substr(pos, next == std::string_view::npos ? next : next - pos);
    if (piece.empty()) return std::nullopt;
    int value = 0;
    for (char c : piece) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    out.push_back(value);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int t = 0; t < std::min(k, n - k); ++t) r = r * (n - t) / (t + 1);
  return r;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// Index of the block containing element position `pos` of a composition.
inline int block_index(const std::vector<int>& blocks, int pos) {
  int b = 0;
  for (int acc = 0; b < static_cast<int>(blocks.size()); ++b) {
    acc += blocks[b];
    if (pos < acc) break;
  }
  return b;
}

}  // namespace detail

/// Canonical printable key for an object, used as serialization key.
inline std::string object_key(const ObjectId& o) {
  switch (o.tag) {
    case CategoryTag::Graph:
    case CategoryTag::Hypergraph:
    case CategoryTag::Basic:
      return o.level == 0 ? "V" : "E" + std::to_string(o.level);
    case CategoryTag::SemiSimplicial:
    case CategoryTag::Simplicial:
      return "[" + std::to_string(o.level) + "]";
    case CategoryTag::Symmetric:
      return "u" + std::to_string(o.level);
    case CategoryTag::Broadcast:
      return "(" + std::to_string(o.level) + ")";
    case CategoryTag::Preorder:
      return "P" + detail::join_ints(o.blocks, '.');
  }
  return "?";
}

/// Canonical printable key for a morphism: "src->dst:data" with the data
/// values joined by '.' ("id" for the identities of the ungraded categories).
inline std::string morphism_key(const MorphismId& m) {
  std::string data = m.data.empty() ? "id" : detail::join_ints(m.data, '.');
  return object_key(m.src) + "->" + object_key(m.dst) + ":" + data;
}

/// Thrown when an enumeration would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  std::uint64_t required;
  explicit BudgetExceeded(std::uint64_t required_)
      : std::runtime_error("enumeration budget exceeded; search space has " +
                           std::to_string(required_) + " candidates"),
        required(required_) {}
};

/// One of the eight built-in shape categories, truncated at a level bound.
///
/// The truncation keeps every roster finite: Hypergraph stops at E_truncation,
/// the graded categories stop at level `truncation`, and Preorder contains all
/// compositions of 1 .. truncation+1.  Graph always has exactly {V, E2} but
/// still records the bound so that its basic vocabulary (see
/// IndexingCategory) ranges over the same E_n roster as its peers.
class FiniteCategory {
 public:
  FiniteCategory(CategoryTag tag, int truncation) : tag_(tag), truncation_(truncation) {
    int min_trunc = 0;
    if (tag == CategoryTag::Graph || tag == CategoryTag::Basic) min_trunc = 2;
    if (tag == CategoryTag::Hypergraph) min_trunc = 1;
    if (truncation < min_trunc || truncation > 16)
      throw std::invalid_argument("truncation out of range for " + std::string(tag_name(tag)));
  }

  CategoryTag tag() const { return tag_; }
  int truncation() const { return truncation_; }

  bool marker_encoded() const {
    return tag_ == CategoryTag::Graph || tag_ == CategoryTag::Hypergraph ||
           tag_ == CategoryTag::Basic;
  }

  /// All objects, ordered by level and then by block composition.
  std::vector<ObjectId> objects() const {
    std::vector<ObjectId> out;
    switch (tag_) {
      case CategoryTag::Graph:
        out.push_back(vertex_object());
        out.push_back(edge_object(2));
        break;
      case CategoryTag::Hypergraph:
        out.push_back(vertex_object());
        for (int n = 1; n <= truncation_; ++n) out.push_back(edge_object(n));
        break;
      case CategoryTag::Basic:
        out.push_back(vertex_object());
        for (int n = 2; n <= truncation_; ++n) out.push_back(edge_object(n));
        break;
      case CategoryTag::SemiSimplicial:
      case CategoryTag::Simplicial:
      case CategoryTag::Symmetric:
      case CategoryTag::Broadcast:
        for (int n = 0; n <= truncation_; ++n) out.push_back(ObjectId{tag_, n, {}});
        break;
      case CategoryTag::Preorder:
        for (int total = 1; total <= truncation_ + 1; ++total) {
          std::vector<std::vector<int>> comps;
          compositions_of(total, comps);
          for (auto& c : comps) out.push_back(ObjectId{tag_, total - 1, c});
        }
        break;
    }
    return out;
  }

  ObjectId vertex_object() const { return ObjectId{tag_, 0, tag_ == CategoryTag::Preorder ? std::vector<int>{1} : std::vector<int>{}}; }

  ObjectId edge_object(int n) const {
    if (!marker_encoded()) throw std::invalid_argument("edge_object: not an edge-roster category");
    return ObjectId{tag_, n, {}};
  }

  bool contains(const ObjectId& o) const {
    if (o.tag != tag_) return false;
    switch (tag_) {
      case CategoryTag::Graph:
        return o.blocks.empty() && (o.level == 0 || o.level == 2);
      case CategoryTag::Hypergraph:
        return o.blocks.empty() && o.level >= 0 && o.level <= truncation_;
      case CategoryTag::Basic:
        return o.blocks.empty() && (o.level == 0 || (o.level >= 2 && o.level <= truncation_));
      case CategoryTag::SemiSimplicial:
      case CategoryTag::Simplicial:
      case CategoryTag::Symmetric:
      case CategoryTag::Broadcast:
        return o.blocks.empty() && o.level >= 0 && o.level <= truncation_;
      case CategoryTag::Preorder: {
        if (o.blocks.empty() || o.level > truncation_) return false;
        int sum = 0;
        for (int b : o.blocks) {
          if (b < 1) return false;
          sum += b;
        }
        return sum == o.level + 1;
      }
    }
    return false;
  }

  /// The i-th vertex arrow V -> E_n (1-based), for the edge-roster categories.
  MorphismId vertex_arrow(int n, int i) const {
    if (!marker_encoded()) throw std::invalid_argument("vertex_arrow: not an edge-roster category");
    if (i < 1 || i > n) throw std::invalid_argument("vertex_arrow: index out of range");
    return MorphismId{vertex_object(), edge_object(n), {i}};
  }

  MorphismId identity(const ObjectId& o) const {
    require_object(o);
    if (marker_encoded()) return MorphismId{o, o, {}};
    std::vector<int> data(static_cast<std::size_t>(o.level) + 1);
    for (int k = 0; k <= o.level; ++k) data[static_cast<std::size_t>(k)] = k;
    return MorphismId{o, o, data};
  }

  bool is_identity(const MorphismId& m) const {
    if (!(m.src == m.dst)) return false;
    return m == identity(m.src);
  }

  bool valid_morphism(const MorphismId& m) const {
    if (!contains(m.src) || !contains(m.dst)) return false;
    if (marker_encoded()) {
      if (m.data.empty()) return m.src == m.dst;
      if (m.data.size() != 1) return false;
      return m.src.level == 0 && m.dst.level >= 1 && m.data[0] >= 1 && m.data[0] <= m.dst.level;
    }
    int positions = m.src.level + 1;
    int values = m.dst.level + 1;
    if (static_cast<int>(m.data.size()) != positions) return false;
    for (int v : m.data)
      if (v < 0 || v >= values) return false;
    switch (tag_) {
      case CategoryTag::SemiSimplicial:
        for (int k = 1; k < positions; ++k)
          if (m.data[k] <= m.data[k - 1]) return false;
        return true;
      case CategoryTag::Simplicial:
        for (int k = 1; k < positions; ++k)
          if (m.data[k] < m.data[k - 1]) return false;
        return true;
      case CategoryTag::Symmetric:
        return true;
      case CategoryTag::Broadcast: {
        if (m.data[0] == 0) return true;
        for (int v : m.data)
          if (v != m.data[0]) return false;
        return true;  // constant at one receiver
      }
      case CategoryTag::Preorder: {
        // The induced map on blocks must be well defined and non-decreasing.
        int prev_src_block = -1, prev_dst_block = -1;
        for (int p = 0; p < positions; ++p) {
          int sb = detail::block_index(m.src.blocks, p);
          int db = detail::block_index(m.dst.blocks, m.data[p]);
          if (sb == prev_src_block) {
            if (db != prev_dst_block) return false;
          } else if (prev_src_block >= 0 && db < prev_dst_block) {
            return false;
          }
          prev_src_block = sb;
          prev_dst_block = db;
        }
        return true;
      }
      default:
        return false;
    }
  }

  /// Hom-set from `a` to `b`, in lexicographic data order.
  std::vector<MorphismId> hom(const ObjectId& a, const ObjectId& b) const {
    require_object(a);
    require_object(b);
    std::vector<MorphismId> out;
    if (marker_encoded()) {
      if (a == b) out.push_back(identity(a));
      if (a.level == 0 && b.level >= 1)
        for (int i = 1; i <= b.level; ++i) out.push_back(vertex_arrow(b.level, i));
      return out;
    }
    int positions = a.level + 1;
    int values = b.level + 1;
    switch (tag_) {
      case CategoryTag::SemiSimplicial: {
        if (positions > values) return out;
        std::vector<int> c(static_cast<std::size_t>(positions));
        for (int k = 0; k < positions; ++k) c[static_cast<std::size_t>(k)] = k;
        while (true) {
          out.push_back(MorphismId{a, b, c});
          int k = positions - 1;
          while (k >= 0 && c[static_cast<std::size_t>(k)] == values - positions + k) --k;
          if (k < 0) break;
          ++c[static_cast<std::size_t>(k)];
          for (int j = k + 1; j < positions; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
      }
      case CategoryTag::Simplicial: {
        std::vector<int> c(static_cast<std::size_t>(positions), 0);
        while (true) {
          out.push_back(MorphismId{a, b, c});
          int k = positions - 1;
          while (k >= 0 && c[static_cast<std::size_t>(k)] == values - 1) --k;
          if (k < 0) break;
          ++c[static_cast<std::size_t>(k)];
          for (int j = k + 1; j < positions; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(k)];
        }
        return out;
      }
      case CategoryTag::Symmetric:
      case CategoryTag::Broadcast:
      case CategoryTag::Preorder: {
        // Odometer over all value assignments, filtered by validity.  The
        // rosters stay small enough that the filter dominates only for
        // Preorder, whose hom-sets have no simple product structure anyway.
        std::vector<int> c(static_cast<std::size_t>(positions), 0);
        while (true) {
          MorphismId m{a, b, c};
          if (valid_morphism(m)) out.push_back(std::move(m));
          int k = positions - 1;
          while (k >= 0 && c[static_cast<std::size_t>(k)] == values - 1) --k;
          if (k < 0) break;
          ++c[static_cast<std::size_t>(k)];
          for (int j = k + 1; j < positions; ++j) c[static_cast<std::size_t>(j)] = 0;
        }
        return out;
      }
      default:
        return out;
    }
  }

  /// |hom(a, b)| without materializing the set (closed forms where available).
  std::int64_t hom_count(const ObjectId& a, const ObjectId& b) const {
    require_object(a);
    require_object(b);
    if (marker_encoded()) {
      std::int64_t n = 0;
      if (a == b) n += 1;
      if (a.level == 0 && b.level >= 1) n += b.level;
      return n;
    }
    int i = a.level, j = b.level;
    switch (tag_) {
      case CategoryTag::SemiSimplicial:
        return detail::binomial(j + 1, i + 1);
      case CategoryTag::Simplicial:
        return detail::binomial(i + j + 1, i + 1);
      case CategoryTag::Symmetric:
        return detail::ipow(j + 1, i + 1);
      case CategoryTag::Broadcast:
        return detail::ipow(j + 1, i) + j;
      case CategoryTag::Preorder: {
        // Sum over non-decreasing block maps of the product of block sizes.
        const auto& sb = a.blocks;
        const auto& db = b.blocks;
        // f[jb] = count for remaining source blocks given minimum target block jb.
        std::vector<std::int64_t> f(db.size() + 1, 1);
        for (int bi = static_cast<int>(sb.size()) - 1; bi >= 0; --bi) {
          std::vector<std::int64_t> g(db.size() + 1, 0);
          for (int jb = static_cast<int>(db.size()) - 1; jb >= 0; --jb) {
            g[static_cast<std::size_t>(jb)] =
                g[static_cast<std::size_t>(jb) + 1] +
                detail::ipow(db[static_cast<std::size_t>(jb)], sb[static_cast<std::size_t>(bi)]) *
                    f[static_cast<std::size_t>(jb)];
          }
          f = std::move(g);
        }
        return f[0];
      }
      default:
        return 0;
    }
  }

  /// g after f.  Requires f.dst == g.src.
  MorphismId compose(const MorphismId& g, const MorphismId& f) const {
    if (!valid_morphism(f) || !valid_morphism(g))
      throw std::invalid_argument("compose: morphism not in category");
    if (!(f.dst == g.src)) throw std::invalid_argument("compose: endpoints do not match");
    if (marker_encoded()) {
      if (is_identity(f)) return g;
      if (is_identity(g)) return f;
      throw std::invalid_argument("compose: no non-identity composites exist here");
    }
    std::vector<int> data(f.data.size());
    for (std::size_t k = 0; k < f.data.size(); ++k)
      data[k] = g.data[static_cast<std::size_t>(f.data[k])];
    return MorphismId{f.src, g.dst, data};
  }

  /// Every morphism, grouped by (source, target) pair in object order.
  std::vector<MorphismId> all_morphisms() const {
    std::vector<MorphismId> out;
    auto obs = objects();
    for (const auto& a : obs)
      for (const auto& b : obs) {
        auto h = hom(a, b);
        out.insert(out.end(), h.begin(), h.end());
      }
    return out;
  }

  /// Whether hom(a, b) can be non-empty judging by levels alone.  Also
  /// answers for hypothetical levels beyond the truncation, which is how Kan
  /// extension results decide their per-level completeness flags.
  static bool hom_nonempty_by_level(CategoryTag tag, int from_level, int to_level) {
    switch (tag) {
      case CategoryTag::Graph:
      case CategoryTag::Hypergraph:
      case CategoryTag::Basic:
        return from_level == to_level || (from_level == 0 && to_level >= 1);
      case CategoryTag::SemiSimplicial:
        return from_level <= to_level;
      case CategoryTag::Simplicial:
      case CategoryTag::Symmetric:
      case CategoryTag::Broadcast:
      case CategoryTag::Preorder:
        return true;  // constant-style maps exist between any two levels
    }
    return false;
  }

  friend bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
    return a.tag_ == b.tag_ && a.truncation_ == b.truncation_;
  }

 private:
  void require_object(const ObjectId& o) const {
    if (!contains(o)) throw std::invalid_argument("object not in category: " + object_key(o));
  }

  static void compositions_of(int total, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    build_compositions(total, cur, out);
  }

  static void build_compositions(int remaining, std::vector<int>& cur,
                                 std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int first = 1; first <= remaining; ++first) {
      cur.push_back(first);
      build_compositions(remaining - first, cur, out);
      cur.pop_back();
    }
  }

  CategoryTag tag_;
  int truncation_;
};

inline std::optional<ObjectId> parse_object_key(const FiniteCategory& cat, std::string_view key) {
  auto make = [&](int level, std::vector<int> blocks) -> std::optional<ObjectId> {
    ObjectId o{cat.tag(), level, std::move(blocks)};
    if (!cat.contains(o)) return std::nullopt;
    return o;
  };
  if (key.empty()) return std::nullopt;
  switch (cat.tag()) {
    case CategoryTag::Graph:
    case CategoryTag::Hypergraph:
    case CategoryTag::Basic: {
      if (key == "V") return make(0, {});
      if (key[0] != 'E') return std::nullopt;
      auto v = detail::parse_ints(key.substr(1), '.');
      if (!v || v->size() != 1) return std::nullopt;
      return make((*v)[0], {});
    }
    case CategoryTag::SemiSimplicial:
    case CategoryTag::Simplicial: {
      if (key.front() != '[' || key.back() != ']') return std::nullopt;
      auto v = detail::parse_ints(key.substr(1, key.size() - 2), '.');
      if (!v || v->size() != 1) return std::nullopt;
      return make((*v)[0], {});
    }
    case CategoryTag::Symmetric: {
      if (key[0] != 'u') return std::nullopt;
      auto v = detail::parse_ints(key.substr(1), '.');
      if (!v || v->size() != 1) return std::nullopt;
      return make((*v)[0], {});
    }
    case CategoryTag::Broadcast: {
      if (key.front() != '(' || key.back() != ')') return std::nullopt;
      auto v = detail::parse_ints(key.substr(1, key.size() - 2), '.');
      if (!v || v->size() != 1) return std::nullopt;
      return make((*v)[0], {});
    }
    case CategoryTag::Preorder: {
      if (key[0] != 'P') return std::nullopt;
      auto v = detail::parse_ints(key.substr(1), '.');
      if (!v) return std::nullopt;
      int sum = 0;
      for (int b : *v) sum += b;
      return make(sum - 1, *v);
    }
  }
  return std::nullopt;
}

inline std::optional<MorphismId> parse_morphism_key(const FiniteCategory& cat,
                                                    std::string_view key) {
  std::size_t arrow = key.find("->");
  if (arrow == std::string_view::npos) return std::nullopt;
  std::size_t colon = key.rfind(':');
  if (colon == std::string_view::npos || colon < arrow) return std::nullopt;
  auto src = parse_object_key(cat, key.substr(0, arrow));
  auto dst = parse_object_key(cat, key.substr(arrow + 2, colon - arrow - 2));
  if (!src || !dst) return std::nullopt;
  std::string_view data_part = key.substr(colon + 1);
  std::vector<int> data;
  if (data_part != "id") {
    auto v = detail::parse_ints(data_part, '.');
    if (!v) return std::nullopt;
    data = *v;
  }
  MorphismId m{*src, *dst, std::move(data)};
  if (!cat.valid_morphism(m)) return std::nullopt;
  return m;
}

/// Result of replaying the category laws over a roster.
struct CategoryAxiomReport {
  std::uint64_t identity_checks = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t triples_checked = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Replays identity, closure, and associativity over the whole (truncated)
/// roster.  Identity laws are checked for every morphism; closure and
/// associativity over all pairs/triples of non-identity morphisms, which the
/// identity laws make exhaustive.  Throws BudgetExceeded before starting if
/// the triple count is too large.
inline CategoryAxiomReport check_category_axioms(const FiniteCategory& cat,
                                                 std::uint64_t budget = 1'000'000) {
  CategoryAxiomReport report;
  auto obs = cat.objects();
  const std::size_t n = obs.size();

  // Pre-size the work using closed-form hom counts (minus identities).
  std::vector<std::vector<std::int64_t>> size(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      size[a][b] = cat.hom_count(obs[a], obs[b]);
      if (a == b) size[a][b] -= 1;
    }
  // Saturating accumulation: hom-sets of the permutation-flavored categories
  // grow fast enough to overflow a plain 64-bit product.
  constexpr std::uint64_t kCap = UINT64_MAX / 4;
  auto sat_mul = [](std::uint64_t x, std::uint64_t y) {
    return (y != 0 && x > kCap / y) ? kCap : x * y;
  };
  std::uint64_t triples = 0, pairs = 0;
  for (std::size_t a = 0; a < n && triples < kCap; ++a)
    for (std::size_t b = 0; b < n && triples < kCap; ++b)
      for (std::size_t c = 0; c < n && triples < kCap; ++c) {
        std::uint64_t p = sat_mul(static_cast<std::uint64_t>(size[a][b]),
                                  static_cast<std::uint64_t>(size[b][c]));
        pairs = std::min(kCap, pairs + p);
        for (std::size_t d = 0; d < n; ++d)
          triples = std::min(kCap, triples + sat_mul(p, static_cast<std::uint64_t>(size[c][d])));
      }
  if (triples > budget) throw BudgetExceeded(triples);

  std::map<std::pair<std::size_t, std::size_t>, std::vector<MorphismId>> homs;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<MorphismId>> homs_plain;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto h = cat.hom(obs[a], obs[b]);
      homs_plain[{a, b}] = h;
      std::erase_if(h, [&](const MorphismId& m) { return cat.is_identity(m); });
      homs[{a, b}] = std::move(h);
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& f : homs_plain[{a, b}]) {
        ++report.identity_checks;
        if (!(cat.compose(f, cat.identity(obs[a])) == f))
          report.violations.push_back("right identity fails for " + morphism_key(f));
        if (!(cat.compose(cat.identity(obs[b]), f) == f))
          report.violations.push_back("left identity fails for " + morphism_key(f));
      }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (const auto& f : homs[{a, b}])
          for (const auto& g : homs[{b, c}]) {
            MorphismId gf = cat.compose(g, f);
            ++report.pairs_checked;
            if (!cat.valid_morphism(gf) || !(gf.src == obs[a]) || !(gf.dst == obs[c]))
              report.violations.push_back("composite escapes the category: " +
                                          morphism_key(g) + " after " + morphism_key(f));
            for (std::size_t d = 0; d < n; ++d)
              for (const auto& h : homs[{c, d}]) {
                ++report.triples_checked;
                if (!(cat.compose(h, gf) == cat.compose(cat.compose(h, g), f)))
                  report.violations.push_back(
                      "associativity fails on " + morphism_key(h) + " after " + morphism_key(g) +
                      " after " + morphism_key(f));
              }
          }
  return report;
}

/// A shape category together with a designated basic vocabulary: which object
/// plays V, which plays E_n, and which morphisms select the n member vertices
/// of an E_n cell.  This is what turns a bare category into an indexing
/// category for network models.
struct IndexingCategory {
  FiniteCategory cat;
  ObjectId vertex;
  std::map<int, ObjectId> edge;                          // n -> image of E_n, n >= 2
  std::map<std::pair<int, int>, MorphismId> vertex_sel;  // (n, i) -> image of v_i^n

  const ObjectId& edge_image(int n) const {
    auto it = edge.find(n);
    if (it == edge.end()) throw std::invalid_argument("no E_" + std::to_string(n) + " image");
    return it->second;
  }

  const MorphismId& vertex_sel_image(int n, int i) const {
    auto it = vertex_sel.find({n, i});
    if (it == vertex_sel.end())
      throw std::invalid_argument("no vertex selector image for (n=" + std::to_string(n) +
                                  ", i=" + std::to_string(i) + ")");
    return it->second;
  }
};

/// Checks that the stored basic vocabulary is an actual functor image: all
/// objects exist, each selector v_i^n maps V-image -> E_n-image, and the
/// roster covers every n from 2 up to the truncation.
inline std::vector<std::string> check_indexing(const IndexingCategory& idx) {
  std::vector<std::string> problems;
  if (!idx.cat.contains(idx.vertex)) problems.push_back("vertex image not in category");
  for (int n = 2; n <= idx.cat.truncation(); ++n) {
    auto it = idx.edge.find(n);
    if (it == idx.edge.end()) {
      problems.push_back("missing E_" + std::to_string(n) + " image");
      continue;
    }
    if (!idx.cat.contains(it->second))
      problems.push_back("E_" + std::to_string(n) + " image not in category");
    for (int i = 1; i <= n; ++i) {
      auto jt = idx.vertex_sel.find({n, i});
      if (jt == idx.vertex_sel.end()) {
        problems.push_back("missing selector (" + std::to_string(n) + "," + std::to_string(i) + ")");
        continue;
      }
      const MorphismId& m = jt->second;
      if (!idx.cat.valid_morphism(m) || !(m.src == idx.vertex) || !(m.dst == it->second))
        problems.push_back("selector (" + std::to_string(n) + "," + std::to_string(i) +
                           ") is not a morphism V-image -> E_n-image");
    }
  }
  return problems;
}

/// True when, for every n, the n vertex selectors have pairwise distinct
/// images, i.e. the basic vocabulary embeds without collapsing.
inline bool check_faithful(const IndexingCategory& idx) {
  for (int n = 2; n <= idx.cat.truncation(); ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (idx.vertex_sel_image(n, i) == idx.vertex_sel_image(n, j)) return false;
  return true;
}

/// The standard basic vocabulary for each built-in category.
///
/// Graph collapses all E_n (n >= 3) onto E2, so it is never faithful once the
/// truncation exceeds 2.  The graded categories send E_n to their level-(n-1)
/// object with v_i^n selecting position i-1; Broadcast sends v_1^n to the
/// hub-preserving map (the sender) and v_i^n (i >= 2) to the constant at
/// receiver i-1.
inline IndexingCategory standard_indexing(CategoryTag tag, int truncation = 6) {
  FiniteCategory cat(tag, truncation);
  IndexingCategory idx{cat, cat.tag() == CategoryTag::Preorder
                                ? ObjectId{tag, 0, {1}}
                                : ObjectId{tag, 0, {}},
                       {}, {}};
  for (int n = 2; n <= truncation; ++n) {
    switch (tag) {
      case CategoryTag::Graph: {
        idx.edge[n] = cat.edge_object(2);
        idx.vertex_sel[{n, 1}] = cat.vertex_arrow(2, 1);
        for (int i = 2; i <= n; ++i) idx.vertex_sel[{n, i}] = cat.vertex_arrow(2, 2);
        break;
      }
      case CategoryTag::Hypergraph:
      case CategoryTag::Basic: {
        idx.edge[n] = cat.edge_object(n);
        for (int i = 1; i <= n; ++i) idx.vertex_sel[{n, i}] = cat.vertex_arrow(n, i);
        break;
      }
      case CategoryTag::SemiSimplicial:
      case CategoryTag::Simplicial:
      case CategoryTag::Symmetric: {
        ObjectId target{tag, n - 1, {}};
        idx.edge[n] = target;
        for (int i = 1; i <= n; ++i)
          idx.vertex_sel[{n, i}] = MorphismId{idx.vertex, target, {i - 1}};
        break;
      }
      case CategoryTag::Broadcast: {
        ObjectId target{tag, n - 1, {}};
        idx.edge[n] = target;
        idx.vertex_sel[{n, 1}] = MorphismId{idx.vertex, target, {0}};
        for (int i = 2; i <= n; ++i)
          idx.vertex_sel[{n, i}] = MorphismId{idx.vertex, target, {i - 1}};
        break;
      }
      case CategoryTag::Preorder: {
        ObjectId target{tag, n - 1, std::vector<int>(static_cast<std::size_t>(n), 1)};
        idx.edge[n] = target;
        for (int i = 1; i <= n; ++i)
          idx.vertex_sel[{n, i}] = MorphismId{idx.vertex, target, {i - 1}};
        break;
      }
    }
  }
  return idx;
}

}  // namespace highergraph
