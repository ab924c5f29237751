#pragma once

// Finite categories, graphs, graph congruences and functors as explicit
// tables. Composition is written in diagrammatic order: compose(f, g) is
// "first f, then g" and requires tgt(f) == src(g).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/pending/disjoint_sets.hpp>

#include "locfrac/error.hpp"

namespace locfrac {

  enum class ObjId : std::uint32_t {};
  enum class MorId : std::uint32_t {};

  constexpr std::size_t index(ObjId x) noexcept {
    return static_cast<std::size_t>(x);
  }
  constexpr std::size_t index(MorId m) noexcept {
    return static_cast<std::size_t>(m);
  }
  constexpr ObjId obj_id(std::size_t i) noexcept {
    return static_cast<ObjId>(i);
  }
  constexpr MorId mor_id(std::size_t i) noexcept {
    return static_cast<MorId>(i);
  }

  ////////////////////////////////////////////////////////////////////////
  // DisjointSets
  ////////////////////////////////////////////////////////////////////////

  /// Union-find over `0 .. n-1`.
  class DisjointSets {
   public:
    DisjointSets() = default;
    explicit DisjointSets(std::size_t n) : sets_(n), size_(n) {}

    std::size_t size() const noexcept {
      return size_;
    }

    std::size_t find(std::size_t x) {
      return sets_.find_set(x);
    }

    // Returns true if x and y were in different blocks.
    bool unite(std::size_t x, std::size_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      sets_.link(x, y);
      return true;
    }

    bool same(std::size_t x, std::size_t y) {
      return find(x) == find(y);
    }

   private:
    boost::disjoint_sets_with_storage<> sets_{0};
    std::size_t size_ = 0;
  };

  ////////////////////////////////////////////////////////////////////////
  // Validation reports
  ////////////////////////////////////////////////////////////////////////

  struct Violation {
    std::string              kind;
    std::string              message;
    std::vector<std::string> ids;
  };

  struct ValidationReport {
    std::vector<Violation> entries;

    bool ok() const noexcept {
      return entries.empty();
    }
    bool has(std::string_view kind) const {
      return std::any_of(entries.begin(), entries.end(), [&](auto const& v) {
        return v.kind == kind;
      });
    }
    void add(std::string kind, std::string message, std::vector<std::string> ids = {}) {
      entries.push_back({std::move(kind), std::move(message), std::move(ids)});
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // FinCategory
  ////////////////////////////////////////////////////////////////////////

  struct MorphismSpec {
    std::string id;
    std::string src;
    std::string tgt;
  };

  /// File-level description of a finite category, all references by name.
  struct CategoryData {
    std::vector<std::string>                         objects;
    std::vector<MorphismSpec>                        morphisms;
    std::vector<std::pair<std::string, std::string>> identities;   // object -> morphism
    std::vector<std::array<std::string, 3>>          composition;  // (first, second, composite)
  };

  class FinCategory {
   public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    FinCategory() = default;

    /// Builds the tables. Unknown or duplicate names throw LoadError; every
    /// other defect (missing entries, wrong endpoints, conflicting entries,
    /// broken laws) is left for validate_category to report.
    static FinCategory from_data(CategoryData const& data) {
      FinCategory c;
      c.obj_names_ = data.objects;
      for (std::size_t i = 0; i < c.obj_names_.size(); ++i) {
        if (!c.obj_index_.emplace(c.obj_names_[i], obj_id(i)).second) {
          throw LoadError("duplicate object id '" + c.obj_names_[i] + "'");
        }
      }
      std::size_t const n = data.morphisms.size();
      c.mor_names_.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto const& m = data.morphisms[i];
        if (!c.mor_index_.emplace(m.id, mor_id(i)).second) {
          throw LoadError("duplicate morphism id '" + m.id + "'");
        }
        c.mor_names_.push_back(m.id);
        c.src_.push_back(c.lookup_object(m.src, "source of '" + m.id + "'"));
        c.tgt_.push_back(c.lookup_object(m.tgt, "target of '" + m.id + "'"));
      }
      c.identity_.assign(c.obj_names_.size(), kNone);
      for (auto const& [obj, mor] : data.identities) {
        ObjId x = c.lookup_object(obj, "identity entry");
        MorId m = c.lookup_morphism(mor, "identity of '" + obj + "'");
        if (c.identity_[index(x)] != kNone && c.identity_[index(x)] != index(m)) {
          c.issues_.add("conflicting identity", "object '" + obj + "' has two identities", {obj, mor});
          continue;
        }
        if (c.src(m) != x || c.tgt(m) != x) {
          c.issues_.add("identity endpoints",
                        "identity '" + mor + "' of '" + obj + "' is not an endomorphism of it",
                        {obj, mor});
        }
        c.identity_[index(x)] = static_cast<std::uint32_t>(index(m));
      }
      c.comp_.assign(n * n, kNone);
      for (auto const& [first, second, composite] : data.composition) {
        MorId f = c.lookup_morphism(first, "composition entry");
        MorId g = c.lookup_morphism(second, "composition entry");
        MorId h = c.lookup_morphism(composite, "composition entry");
        if (c.tgt(f) != c.src(g)) {
          c.issues_.add("non-composable entry",
                        "composite given for non-composable pair (" + first + ", " + second + ")",
                        {first, second});
          continue;
        }
        if (c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g)) {
          c.issues_.add("composite endpoints",
                        "composite of (" + first + ", " + second + ") has wrong endpoints",
                        {first, second, composite});
        }
        auto& slot = c.comp_[index(f) * n + index(g)];
        if (slot != kNone && slot != index(h)) {
          c.issues_.add("conflicting composite",
                        "pair (" + first + ", " + second + ") has two composites",
                        {first, second});
          continue;
        }
        slot = static_cast<std::uint32_t>(index(h));
      }
      std::size_t const k = c.obj_names_.size();
      c.hom_.assign(k * k, {});
      for (std::size_t i = 0; i < n; ++i) {
        c.hom_[index(c.src_[i]) * k + index(c.tgt_[i])].push_back(mor_id(i));
      }
      return c;
    }

    std::size_t object_count() const noexcept {
      return obj_names_.size();
    }
    std::size_t morphism_count() const noexcept {
      return mor_names_.size();
    }

    std::vector<ObjId> objects() const {
      std::vector<ObjId> out(object_count());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = obj_id(i);
      }
      return out;
    }
    std::vector<MorId> morphisms() const {
      std::vector<MorId> out(morphism_count());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = mor_id(i);
      }
      return out;
    }

    ObjId src(MorId f) const {
      return src_[index(f)];
    }
    ObjId tgt(MorId f) const {
      return tgt_[index(f)];
    }

    bool has_identity(ObjId x) const {
      return identity_[index(x)] != kNone;
    }
    MorId identity(ObjId x) const {
      auto id = identity_[index(x)];
      if (id == kNone) {
        throw DomainError("object '" + name(x) + "' has no identity");
      }
      return mor_id(id);
    }
    bool is_identity(MorId f) const {
      return src(f) == tgt(f) && identity_[index(src(f))] == index(f);
    }

    bool composable(MorId f, MorId g) const {
      return tgt(f) == src(g);
    }

    /// The composite if the pair is composable and the table has an entry.
    std::optional<MorId> try_compose(MorId f, MorId g) const {
      if (!composable(f, g)) {
        return std::nullopt;
      }
      auto h = comp_[index(f) * morphism_count() + index(g)];
      if (h == kNone) {
        return std::nullopt;
      }
      return mor_id(h);
    }

    MorId compose(MorId f, MorId g) const {
      if (!composable(f, g)) {
        throw DomainError("cannot compose '" + name(f) + "': " + name(src(f)) + " -> "
                          + name(tgt(f)) + " with '" + name(g) + "': " + name(src(g)) + " -> "
                          + name(tgt(g)));
      }
      auto h = comp_[index(f) * morphism_count() + index(g)];
      if (h == kNone) {
        throw DomainError("missing composite for (" + name(f) + ", " + name(g) + ")");
      }
      return mor_id(h);
    }

    MorId compose(MorId f, MorId g, MorId h) const {
      return compose(compose(f, g), h);
    }

    /// Morphisms x -> y in index order.
    std::span<MorId const> hom(ObjId x, ObjId y) const {
      return hom_[index(x) * object_count() + index(y)];
    }

    std::string const& name(ObjId x) const {
      return obj_names_[index(x)];
    }
    std::string const& name(MorId f) const {
      return mor_names_[index(f)];
    }

    std::optional<ObjId> find_object(std::string_view id) const {
      auto it = obj_index_.find(std::string(id));
      if (it == obj_index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    std::optional<MorId> find_morphism(std::string_view id) const {
      auto it = mor_index_.find(std::string(id));
      if (it == mor_index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    ObjId object(std::string_view id) const {
      if (auto x = find_object(id)) {
        return *x;
      }
      throw DomainError("unknown object id '" + std::string(id) + "'");
    }
    MorId morphism(std::string_view id) const {
      if (auto f = find_morphism(id)) {
        return *f;
      }
      throw DomainError("unknown morphism id '" + std::string(id) + "'");
    }

    /// Round trip back to the file-level description. Composition triples
    /// are emitted for composable pairs in (first, second) index order.
    CategoryData to_data() const {
      CategoryData d;
      d.objects = obj_names_;
      for (std::size_t i = 0; i < morphism_count(); ++i) {
        d.morphisms.push_back({mor_names_[i], name(src_[i]), name(tgt_[i])});
      }
      for (std::size_t x = 0; x < object_count(); ++x) {
        if (identity_[x] != kNone) {
          d.identities.emplace_back(obj_names_[x], mor_names_[identity_[x]]);
        }
      }
      for (std::size_t f = 0; f < morphism_count(); ++f) {
        for (std::size_t g = 0; g < morphism_count(); ++g) {
          auto h = comp_[f * morphism_count() + g];
          if (h != kNone) {
            d.composition.push_back({mor_names_[f], mor_names_[g], mor_names_[h]});
          }
        }
      }
      return d;
    }

    ValidationReport const& construction_issues() const noexcept {
      return issues_;
    }

   private:
    ObjId lookup_object(std::string const& id, std::string const& where) const {
      auto it = obj_index_.find(id);
      if (it == obj_index_.end()) {
        throw LoadError("unknown object id '" + id + "' in " + where);
      }
      return it->second;
    }
    MorId lookup_morphism(std::string const& id, std::string const& where) const {
      auto it = mor_index_.find(id);
      if (it == mor_index_.end()) {
        throw LoadError("unknown morphism id '" + id + "' in " + where);
      }
      return it->second;
    }

    std::vector<std::string>               obj_names_;
    std::vector<std::string>               mor_names_;
    std::unordered_map<std::string, ObjId> obj_index_;
    std::unordered_map<std::string, MorId> mor_index_;
    std::vector<ObjId>                     src_;
    std::vector<ObjId>                     tgt_;
    std::vector<std::uint32_t>             identity_;
    std::vector<std::uint32_t>             comp_;
    std::vector<std::vector<MorId>>        hom_;
    ValidationReport                       issues_;
  };

  /// Lists every violated category axiom; empty iff `c` is a category.
  inline ValidationReport validate_category(FinCategory const& c) {
    ValidationReport report = c.construction_issues();
    for (auto x : c.objects()) {
      if (!c.has_identity(x)) {
        report.add("missing identity", "object '" + c.name(x) + "' has no identity", {c.name(x)});
      }
    }
    bool complete = true;
    for (auto f : c.morphisms()) {
      for (auto g : c.morphisms()) {
        if (c.composable(f, g) && !c.try_compose(f, g)) {
          complete = false;
          report.add("missing composite",
                     "no composite for composable pair (" + c.name(f) + ", " + c.name(g) + ")",
                     {c.name(f), c.name(g)});
        }
      }
    }
    if (!report.ok() && !complete) {
      // Laws below need a total table.
      return report;
    }
    for (auto f : c.morphisms()) {
      if (c.has_identity(c.src(f))) {
        auto lhs = c.try_compose(c.identity(c.src(f)), f);
        if (lhs && *lhs != f) {
          report.add("left identity law", "1 * " + c.name(f) + " != " + c.name(f), {c.name(f)});
        }
      }
      if (c.has_identity(c.tgt(f))) {
        auto rhs = c.try_compose(f, c.identity(c.tgt(f)));
        if (rhs && *rhs != f) {
          report.add("right identity law", c.name(f) + " * 1 != " + c.name(f), {c.name(f)});
        }
      }
    }
    for (auto f : c.morphisms()) {
      for (auto g : c.morphisms()) {
        auto fg = c.try_compose(f, g);
        if (!fg) {
          continue;
        }
        auto const k = c.tgt(g);
        for (auto y : c.objects()) {
          for (auto h : c.hom(k, y)) {
            auto gh  = c.try_compose(g, h);
            auto lhs = c.try_compose(*fg, h);
            auto rhs = gh ? c.try_compose(f, *gh) : std::nullopt;
            if (lhs && rhs && *lhs != *rhs) {
              report.add("associativity",
                         "(" + c.name(f) + " " + c.name(g) + ") " + c.name(h) + " != " + c.name(f)
                             + " (" + c.name(g) + " " + c.name(h) + ")",
                         {c.name(f), c.name(g), c.name(h)});
            }
          }
        }
      }
    }
    return report;
  }

  /// Two-sided inverse of f, if any.
  inline std::optional<MorId> inverse(FinCategory const& c, MorId f) {
    for (auto g : c.hom(c.tgt(f), c.src(f))) {
      if (c.compose(f, g) == c.identity(c.src(f)) && c.compose(g, f) == c.identity(c.tgt(f))) {
        return g;
      }
    }
    return std::nullopt;
  }

  inline bool is_isomorphism(FinCategory const& c, MorId f) {
    return inverse(c, f).has_value();
  }

  ////////////////////////////////////////////////////////////////////////
  // Graphs and graph congruences
  ////////////////////////////////////////////////////////////////////////

  struct FinGraph {
    std::size_t              object_count = 0;
    std::vector<std::size_t> src;
    std::vector<std::size_t> tgt;

    std::size_t arrow_count() const noexcept {
      return src.size();
    }
    bool parallel(std::size_t a, std::size_t b) const {
      return src[a] == src[b] && tgt[a] == tgt[b];
    }
  };

  inline FinGraph underlying_graph(FinCategory const& c) {
    FinGraph g;
    g.object_count = c.object_count();
    for (auto f : c.morphisms()) {
      g.src.push_back(index(c.src(f)));
      g.tgt.push_back(index(c.tgt(f)));
    }
    return g;
  }

  /// An equivalence relation on the arrows of `base`. Relating non-parallel
  /// arrows is allowed here and rejected by quotient_graph.
  struct GraphCongruence {
    FinGraph     base;
    DisjointSets partition;

    explicit GraphCongruence(FinGraph g) : base(std::move(g)), partition(base.arrow_count()) {}

    void relate(std::size_t a, std::size_t b) {
      partition.unite(a, b);
    }
  };

  struct GraphMorphism {
    std::vector<std::size_t> obj_map;
    std::vector<std::size_t> arrow_map;
  };

  struct QuotientGraph {
    FinGraph      graph;
    GraphMorphism projection;           // identity on objects, class map on arrows
    std::vector<std::size_t> representative;  // smallest member of each class
  };

  /// Classes are numbered in order of their smallest member.
  inline QuotientGraph quotient_graph(GraphCongruence cong) {
    auto const& g = cong.base;
    std::size_t const n = g.arrow_count();
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t root = cong.partition.find(a);
      if (!g.parallel(a, root)) {
        throw CongruenceError("related arrows " + std::to_string(a) + " and "
                              + std::to_string(root) + " are not parallel");
      }
    }
    QuotientGraph q;
    q.graph.object_count = g.object_count;
    q.projection.obj_map.resize(g.object_count);
    std::iota(q.projection.obj_map.begin(), q.projection.obj_map.end(), std::size_t{0});
    q.projection.arrow_map.assign(n, 0);
    std::vector<std::size_t> class_of_root(n, std::numeric_limits<std::size_t>::max());
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t root = cong.partition.find(a);
      if (class_of_root[root] == std::numeric_limits<std::size_t>::max()) {
        class_of_root[root] = q.representative.size();
        q.representative.push_back(a);
        q.graph.src.push_back(g.src[a]);
        q.graph.tgt.push_back(g.tgt[a]);
      }
      q.projection.arrow_map[a] = class_of_root[root];
    }
    return q;
  }

  inline bool is_graph_morphism(FinGraph const& from, FinGraph const& to, GraphMorphism const& m) {
    if (m.obj_map.size() != from.object_count || m.arrow_map.size() != from.arrow_count()) {
      return false;
    }
    for (std::size_t a = 0; a < from.arrow_count(); ++a) {
      std::size_t b = m.arrow_map[a];
      if (b >= to.arrow_count() || to.src[b] != m.obj_map[from.src[a]]
          || to.tgt[b] != m.obj_map[from.tgt[a]]) {
        return false;
      }
    }
    return true;
  }

  /// The unique morphism out of the quotient through which `m` factors, or
  /// nullopt when `m` is not constant on congruence classes.
  inline std::optional<GraphMorphism> factor_through_quotient(QuotientGraph const& q,
                                                              GraphMorphism const& m) {
    GraphMorphism out;
    out.obj_map = m.obj_map;
    out.arrow_map.resize(q.graph.arrow_count());
    for (std::size_t k = 0; k < q.representative.size(); ++k) {
      out.arrow_map[k] = m.arrow_map[q.representative[k]];
    }
    for (std::size_t a = 0; a < m.arrow_map.size(); ++a) {
      if (m.arrow_map[a] != out.arrow_map[q.projection.arrow_map[a]]) {
        return std::nullopt;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Functors
  ////////////////////////////////////////////////////////////////////////

  struct FunctorTable {
    std::shared_ptr<FinCategory const> source;
    std::shared_ptr<FinCategory const> target;
    std::vector<ObjId>                 obj_map;
    std::vector<MorId>                 mor_map;

    ObjId operator()(ObjId x) const {
      return obj_map[index(x)];
    }
    MorId operator()(MorId f) const {
      return mor_map[index(f)];
    }
  };

  inline FunctorTable identity_functor(std::shared_ptr<FinCategory const> c) {
    FunctorTable F{c, c, c->objects(), c->morphisms()};
    return F;
  }

  /// Empty iff F preserves endpoints, identities and composition.
  inline ValidationReport validate_functor(FunctorTable const& F) {
    ValidationReport report;
    auto const& C = *F.source;
    auto const& D = *F.target;
    if (F.obj_map.size() != C.object_count() || F.mor_map.size() != C.morphism_count()) {
      report.add("shape", "functor table sizes do not match the source category");
      return report;
    }
    for (auto x : F.obj_map) {
      if (index(x) >= D.object_count()) {
        report.add("range", "object image out of range");
        return report;
      }
    }
    for (auto f : F.mor_map) {
      if (index(f) >= D.morphism_count()) {
        report.add("range", "morphism image out of range");
        return report;
      }
    }
    for (auto f : C.morphisms()) {
      if (D.src(F(f)) != F(C.src(f)) || D.tgt(F(f)) != F(C.tgt(f))) {
        report.add("endpoints", "image of '" + C.name(f) + "' has wrong endpoints", {C.name(f)});
      }
    }
    if (!report.ok()) {
      return report;
    }
    for (auto x : C.objects()) {
      if (F(C.identity(x)) != D.identity(F(x))) {
        report.add("identity", "identity of '" + C.name(x) + "' not preserved", {C.name(x)});
      }
    }
    for (auto f : C.morphisms()) {
      for (auto y : C.objects()) {
        for (auto g : C.hom(C.tgt(f), y)) {
          if (F(C.compose(f, g)) != D.compose(F(f), F(g))) {
            report.add("composition",
                       "F(" + C.name(f) + " " + C.name(g) + ") != F(" + C.name(f) + ") F("
                           + C.name(g) + ")",
                       {C.name(f), C.name(g)});
          }
        }
      }
    }
    return report;
  }

  /// G after F (apply F first).
  inline FunctorTable compose_functors(FunctorTable const& F, FunctorTable const& G) {
    FunctorTable H{F.source, G.target, {}, {}};
    for (auto x : F.obj_map) {
      H.obj_map.push_back(G(x));
    }
    for (auto f : F.mor_map) {
      H.mor_map.push_back(G(f));
    }
    return H;
  }

}  // namespace locfrac
