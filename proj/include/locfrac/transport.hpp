#pragma once

// Chosen finite coproducts and products, closure of D under them, their
// preservation by the localisation functor, and the sum formula.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locfrac/fraction_category.hpp"

namespace locfrac {

  struct CoproductEntry {
    ObjId x1{}, x2{};
    ObjId object{};
    MorId emb1{}, emb2{};
  };

  struct CoproductData {
    std::optional<ObjId>        initial;
    std::vector<CoproductEntry> pairwise;

    CoproductEntry const* find(ObjId x1, ObjId x2) const {
      for (auto const& e : pairwise) {
        if (e.x1 == x1 && e.x2 == x2) {
          return &e;
        }
      }
      return nullptr;
    }

    CoproductEntry const& at(FinCategory const& c, ObjId x1, ObjId x2) const {
      if (auto const* e = find(x1, x2)) {
        return *e;
      }
      throw DomainError("no chosen coproduct of '" + c.name(x1) + "' and '" + c.name(x2) + "'");
    }
  };

  /// Same layout with projections pr1: object -> x1, pr2: object -> x2.
  struct ProductEntry {
    ObjId x1{}, x2{};
    ObjId object{};
    MorId pr1{}, pr2{};
  };

  struct ProductData {
    std::optional<ObjId>      terminal;
    std::vector<ProductEntry> pairwise;
  };

  ////////////////////////////////////////////////////////////////////////
  // Opposites
  ////////////////////////////////////////////////////////////////////////

  /// Same ids and indices, arrows reversed.
  inline FinCategory opposite(FinCategory const& c) {
    auto data = c.to_data();
    for (auto& m : data.morphisms) {
      std::swap(m.src, m.tgt);
    }
    for (auto& t : data.composition) {
      std::swap(t[0], t[1]);
    }
    return FinCategory::from_data(data);
  }

  /// D unchanged, S and T exchanged.
  inline DenominatorData opposite(DenominatorData const& dd) {
    auto            op = std::make_shared<FinCategory const>(opposite(dd.base()));
    DenominatorData out(op);
    for (auto f : dd.base().morphisms()) {
      out.set(Which::D, f, dd.in_D(f));
      out.set(Which::S, f, dd.in_T(f));
      out.set(Which::T, f, dd.in_S(f));
    }
    return out;
  }

  inline CoproductData as_coproducts_of_opposite(ProductData const& pd) {
    CoproductData cp{pd.terminal, {}};
    for (auto const& e : pd.pairwise) {
      cp.pairwise.push_back({e.x1, e.x2, e.object, e.pr1, e.pr2});
    }
    return cp;
  }

  ////////////////////////////////////////////////////////////////////////
  // Universal properties
  ////////////////////////////////////////////////////////////////////////

  /// The mediator w: object -> tgt u with emb1 w = u and emb2 w = v, when
  /// it exists and is unique.
  inline std::optional<MorId> copair(FinCategory const& c, ObjId object, MorId emb1, MorId emb2,
                                     MorId u, MorId v) {
    std::optional<MorId> found;
    for (auto w : c.hom(object, c.tgt(u))) {
      if (c.compose(emb1, w) == u && c.compose(emb2, w) == v) {
        if (found) {
          return std::nullopt;
        }
        found = w;
      }
    }
    return found;
  }

  inline std::optional<MorId> copair(FinCategory const& c, CoproductEntry const& e, MorId u, MorId v) {
    return copair(c, e.object, e.emb1, e.emb2, u, v);
  }

  inline bool is_initial(FinCategory const& c, ObjId x) {
    for (auto y : c.objects()) {
      if (c.hom(x, y).size() != 1) {
        return false;
      }
    }
    return true;
  }

  /// Empty iff (object, emb1, emb2) is a coproduct of x1 and x2.
  inline std::optional<std::string> coproduct_failure(FinCategory const& c, ObjId x1, ObjId x2,
                                                      ObjId object, MorId emb1, MorId emb2) {
    if (c.src(emb1) != x1 || c.tgt(emb1) != object || c.src(emb2) != x2 || c.tgt(emb2) != object) {
      return "embeddings have wrong endpoints";
    }
    for (auto w : c.objects()) {
      for (auto u : c.hom(x1, w)) {
        for (auto v : c.hom(x2, w)) {
          if (!copair(c, object, emb1, emb2, u, v)) {
            return "no unique mediator for (" + c.name(u) + ", " + c.name(v) + ")";
          }
        }
      }
    }
    return std::nullopt;
  }

  inline ValidationReport validate_coproducts(FinCategory const& c, CoproductData const& cp) {
    ValidationReport report;
    if (cp.initial && !is_initial(c, *cp.initial)) {
      report.add("initial", "'" + c.name(*cp.initial) + "' is not initial", {c.name(*cp.initial)});
    }
    for (auto const& e : cp.pairwise) {
      if (auto why = coproduct_failure(c, e.x1, e.x2, e.object, e.emb1, e.emb2)) {
        report.add("coproduct",
                   "chosen coproduct of '" + c.name(e.x1) + "' and '" + c.name(e.x2) + "': " + *why,
                   {c.name(e.x1), c.name(e.x2)});
      }
    }
    return report;
  }

  inline ValidationReport validate_products(FinCategory const& c, ProductData const& pd) {
    auto report = validate_coproducts(opposite(c), as_coproducts_of_opposite(pd));
    for (auto& v : report.entries) {
      if (v.kind == "initial") {
        v.kind    = "terminal";
        v.message = "'" + v.ids.front() + "' is not terminal";
      } else {
        v.kind = "product";
        auto p = v.message.find("coproduct");
        v.message.replace(p, 9, "product");
        for (std::string const from : {"embeddings"}) {
          if (auto q = v.message.find(from); q != std::string::npos) {
            v.message.replace(q, from.size(), "projections");
          }
        }
      }
    }
    return report;
  }

  /// d ⊔ e = copair(d emb1, e emb2) between the chosen coproducts.
  inline MorId coproduct_of_morphisms(FinCategory const& c, CoproductData const& cp, MorId d, MorId e) {
    auto const& from = cp.at(c, c.src(d), c.src(e));
    auto const& to   = cp.at(c, c.tgt(d), c.tgt(e));
    auto        w    = copair(c, from, c.compose(d, to.emb1), c.compose(e, to.emb2));
    if (!w) {
      throw DomainError("chosen coproduct of '" + c.name(c.src(d)) + "' and '" + c.name(c.src(e))
                        + "' has no unique mediator");
    }
    return *w;
  }

  namespace detail {
    inline Check<std::pair<MorId, MorId>> closure_over(DenominatorData const& dd, CoproductData const& cp,
                                                       std::vector<MorId> const& xs,
                                                       std::vector<MorId> const& ys) {
      auto const& c = dd.base();
      for (auto d : xs) {
        for (auto e : ys) {
          if (!cp.find(c.src(d), c.src(e)) || !cp.find(c.tgt(d), c.tgt(e))) {
            continue;
          }
          if (!dd.in_D(coproduct_of_morphisms(c, cp, d, e))) {
            return Check<std::pair<MorId, MorId>>::fail({d, e});
          }
        }
      }
      return Check<std::pair<MorId, MorId>>::pass();
    }
  }  // namespace detail

  /// Closure of D under chosen coproducts, decided over all D x D pairs and
  /// over S x S together with T x T. The two routes are asserted to agree
  /// whenever the structure is uni-fractionable.
  inline Check<std::pair<MorId, MorId>> denominators_closed_under_coproducts(DenominatorData const& dd,
                                                                             CoproductData const& cp) {
    auto all = detail::closure_over(dd, cp, dd.members(Which::D), dd.members(Which::D));
    auto ss  = detail::closure_over(dd, cp, dd.members(Which::S), dd.members(Which::S));
    auto tt  = detail::closure_over(dd, cp, dd.members(Which::T), dd.members(Which::T));
    bool const short_route = ss.holds && tt.holds;
    if (short_route != all.holds && is_uni_fractionable(dd).ok()) {
      throw InvariantError("closure routes disagree");
    }
    return all;
  }

  inline Check<std::pair<MorId, MorId>> denominators_closed_under_products(DenominatorData const& dd,
                                                                           ProductData const&     pd) {
    return denominators_closed_under_coproducts(opposite(dd), as_coproducts_of_opposite(pd));
  }

  ////////////////////////////////////////////////////////////////////////
  // Preservation by localisation
  ////////////////////////////////////////////////////////////////////////

  struct TransportReport {
    std::vector<ReportItem> items;
    std::size_t             formula_checks = 0;

    bool ok() const {
      return std::all_of(items.begin(), items.end(), [](auto const& i) { return i.passed; });
    }
  };

  namespace detail {
    /// L(initial) initial and L of each chosen coproduct a coproduct.
    inline bool localisation_preserves(FractionCategory const& fc, CoproductData const& cp,
                                       std::string* why) {
      auto const& Q = *fc.as_category;
      auto const& c = fc.base();
      if (cp.initial && !is_initial(Q, *cp.initial)) {
        *why = "L('" + c.name(*cp.initial) + "') is not initial";
        return false;
      }
      for (auto const& e : cp.pairwise) {
        if (auto f = coproduct_failure(Q, e.x1, e.x2, e.object, fc.loc(e.emb1), fc.loc(e.emb2))) {
          *why = "L of the coproduct of '" + c.name(e.x1) + "' and '" + c.name(e.x2) + "': " + *f;
          return false;
        }
      }
      return true;
    }
  }  // namespace detail

  /// On a saturated base, L preserving the chosen coproducts forces D to be
  /// closed under them. False only on a counterexample.
  inline bool saturated_converse_holds(FractionCategory const& fc, CoproductData const& cp) {
    std::string why;
    if (!is_saturated(fc) || !detail::localisation_preserves(fc, cp, &why)) {
      return true;
    }
    return denominators_closed_under_coproducts(fc.data(), cp).holds;
  }

  /// Initial object, coproducts with L(emb_k) as embeddings, the mediator
  /// formula [(b1 ⊔ b2) / copair(f1, f2) / a] on every pair of 3-arrows with
  /// common a, and the converse for saturated bases.
  inline TransportReport check_localisation_preserves_coproducts(FractionCategory const& fc,
                                                                 CoproductData const&    cp) {
    auto const& c  = fc.base();
    auto const& dd = fc.data();
    auto const& Q  = *fc.as_category;
    auto closed    = denominators_closed_under_coproducts(dd, cp);
    if (!closed) {
      throw DomainError("D is not closed under the chosen coproducts: '"
                        + c.name(closed.counterexample->first) + "' and '"
                        + c.name(closed.counterexample->second) + "'");
    }
    TransportReport report;
    {
      std::string why;
      bool        ok = detail::localisation_preserves(fc, cp, &why);
      report.items.push_back({"coproducts preserved", ok, why, {}});
    }
    {
      ReportItem item{"mediator formula", true, {}, {}};
      auto const& arrows = fc.part.arrows;
      for (auto const& t1 : arrows) {
        for (auto const& t2 : arrows) {
          if (t1.a != t2.a || !item.passed) {
            continue;
          }
          ObjId const x1 = source(c, t1), x2 = source(c, t2);
          auto const* outer = cp.find(x1, x2);
          auto const* inner = cp.find(c.src(t1.b), c.src(t2.b));
          if (!outer || !inner) {
            continue;
          }
          MorId const bb = coproduct_of_morphisms(c, cp, t1.b, t2.b);
          auto        ff = copair(c, *inner, t1.f, t2.f);
          if (!ff) {
            throw InvariantError("chosen coproduct lacks a mediator");
          }
          MorId const formula = fc.cls({bb, *ff, t1.a});
          auto        med     = copair(Q, outer->object, fc.loc(outer->emb1), fc.loc(outer->emb2),
                                       fc.cls(t1), fc.cls(t2));
          ++report.formula_checks;
          if (!med || *med != formula) {
            item.passed  = false;
            item.detail  = "formula differs from the mediator";
            item.witness = {"t1=" + format(c, t1), "t2=" + format(c, t2)};
          }
        }
      }
      report.items.push_back(item);
    }
    report.items.push_back({"saturated converse", saturated_converse_holds(fc, cp), {}, {}});
    return report;
  }

  /// Dual of the coproduct check, run on the opposite structure. The
  /// opposite fraction category is first matched class by class with the
  /// opposite of `fc`.
  inline TransportReport check_localisation_preserves_products(FractionCategory const& fc,
                                                               ProductData const&      pd) {
    auto const  op = build_fraction_category(opposite(fc.data()));
    auto const& c  = fc.base();
    std::vector<std::optional<MorId>> match(op->class_count());
    for (auto const& t : op->part.arrows) {
      auto& m = match[index(op->cls(t))];
      auto  r = fc.cls({t.a, t.f, t.b});
      if (m && *m != r) {
        throw InvariantError("opposite fraction category does not match at " + format(c, t));
      }
      m = r;
    }
    auto report = check_localisation_preserves_coproducts(*op, as_coproducts_of_opposite(pd));
    report.items[0].name = "products preserved";
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Sums
  ////////////////////////////////////////////////////////////////////////

  /// Hom-wise addition as (f, g, f + g) triples.
  struct AdditionData {
    std::vector<std::array<MorId, 3>> table;
  };

  /// Checks the addition tables (totality, commutative monoid per hom,
  /// bilinearity), then that [b/f/a] + [b/g/a] := [b/(f+g)/a] is well defined
  /// on classes, agrees with L on morphisms and has [b/0/a] as identity.
  inline TransportReport sum_formula_check(FractionCategory const& fc, AdditionData const& add) {
    auto const&          c = fc.base();
    std::size_t const    n = c.morphism_count();
    std::vector<std::optional<MorId>> sum(n * n);
    for (auto const& [f, g, h] : add.table) {
      if (c.src(f) != c.src(g) || c.tgt(f) != c.tgt(g) || c.src(h) != c.src(f)
          || c.tgt(h) != c.tgt(f)) {
        throw DomainError("addition entry for non-parallel morphisms");
      }
      sum[index(f) * n + index(g)] = h;
    }
    auto plus = [&](MorId f, MorId g) {
      auto s = sum[index(f) * n + index(g)];
      if (!s) {
        throw DomainError("addition table misses (" + c.name(f) + ", " + c.name(g) + ")");
      }
      return *s;
    };
    std::vector<std::optional<MorId>> zero(c.object_count() * c.object_count());
    for (auto x : c.objects()) {
      for (auto y : c.objects()) {
        auto hom = c.hom(x, y);
        for (auto f : hom) {
          for (auto g : hom) {
            if (plus(f, g) != plus(g, f)) {
              throw DomainError("addition is not commutative");
            }
            for (auto h : hom) {
              if (plus(plus(f, g), h) != plus(f, plus(g, h))) {
                throw DomainError("addition is not associative");
              }
            }
          }
        }
        for (auto z : hom) {
          if (std::all_of(hom.begin(), hom.end(), [&](MorId f) { return plus(z, f) == f; })) {
            zero[index(x) * c.object_count() + index(y)] = z;
          }
        }
        if (!hom.empty() && !zero[index(x) * c.object_count() + index(y)]) {
          throw DomainError("hom-set has no additive identity");
        }
      }
    }
    for (auto f : c.morphisms()) {
      for (auto g : c.hom(c.src(f), c.tgt(f))) {
        for (auto w : c.objects()) {
          for (auto h : c.hom(c.tgt(f), w)) {
            if (c.compose(plus(f, g), h) != plus(c.compose(f, h), c.compose(g, h))) {
              throw DomainError("composition is not additive on the right");
            }
          }
          for (auto h : c.hom(w, c.src(f))) {
            if (c.compose(h, plus(f, g)) != plus(c.compose(h, f), c.compose(h, g))) {
              throw DomainError("composition is not additive on the left");
            }
          }
        }
      }
    }

    TransportReport report;
    ReportItem      defined{"sum well defined", true, {}, {}};
    ReportItem      unit{"additive identity", true, {}, {}};
    ReportItem      loc{"L additive", true, {}, {}};
    std::map<std::pair<MorId, MorId>, MorId> class_sum;
    for (auto const& t1 : fc.part.arrows) {
      for (auto const& t2 : fc.part.arrows) {
        if (t1.b != t2.b || t1.a != t2.a) {
          continue;
        }
        ++report.formula_checks;
        MorId const s   = fc.cls({t1.b, plus(t1.f, t2.f), t1.a});
        auto [it, ins]  = class_sum.emplace(std::pair{fc.cls(t1), fc.cls(t2)}, s);
        if (!ins && it->second != s) {
          defined.passed  = false;
          defined.witness = {"t1=" + format(c, t1), "t2=" + format(c, t2)};
        }
        auto z = zero[index(c.src(t1.f)) * c.object_count() + index(c.tgt(t1.f))];
        if (fc.cls({t1.b, plus(t1.f, *z), t1.a}) != fc.cls(t1)) {
          unit.passed  = false;
          unit.witness = {"t=" + format(c, t1)};
        }
      }
    }
    for (auto f : c.morphisms()) {
      for (auto g : c.hom(c.src(f), c.tgt(f))) {
        auto it = class_sum.find({fc.loc(f), fc.loc(g)});
        if (it == class_sum.end() || it->second != fc.loc(plus(f, g))) {
          loc.passed  = false;
          loc.witness = {"f=" + c.name(f), "g=" + c.name(g)};
        }
      }
    }
    report.items = {defined, unit, loc};
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // Posets: joins and meets
  ////////////////////////////////////////////////////////////////////////

  inline bool is_thin(FinCategory const& c) {
    for (auto x : c.objects()) {
      for (auto y : c.objects()) {
        if (c.hom(x, y).size() > 1 || (x != y && !c.hom(x, y).empty() && !c.hom(y, x).empty())) {
          return false;
        }
      }
    }
    return true;
  }

  /// Joins and bottom of a poset category, where they exist.
  inline CoproductData derive_joins(FinCategory const& c) {
    if (!is_thin(c)) {
      throw DomainError("joins are only derived for poset categories");
    }
    auto le = [&](ObjId x, ObjId y) { return !c.hom(x, y).empty(); };
    CoproductData cp;
    for (auto x : c.objects()) {
      if (is_initial(c, x)) {
        cp.initial = x;
        break;
      }
    }
    for (auto x1 : c.objects()) {
      for (auto x2 : c.objects()) {
        for (auto z : c.objects()) {
          if (!le(x1, z) || !le(x2, z)) {
            continue;
          }
          bool least = true;
          for (auto w : c.objects()) {
            if (le(x1, w) && le(x2, w) && !le(z, w)) {
              least = false;
              break;
            }
          }
          if (least) {
            cp.pairwise.push_back({x1, x2, z, c.hom(x1, z)[0], c.hom(x2, z)[0]});
            break;
          }
        }
      }
    }
    return cp;
  }

  inline ProductData derive_meets(FinCategory const& c) {
    auto        joins = derive_joins(opposite(c));
    ProductData pd{joins.initial, {}};
    for (auto const& e : joins.pairwise) {
      pd.pairwise.push_back({e.x1, e.x2, e.object, e.emb1, e.emb2});
    }
    return pd;
  }

}  // namespace locfrac
