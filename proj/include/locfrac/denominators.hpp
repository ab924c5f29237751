#pragma once

// Denominator data D ⊇ S, T on a finite category, the saturation ladder and
// the two existence axioms for Ore completions and factorisations.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locfrac/fincat.hpp"

namespace locfrac {

  /// Result of a decision with an optional counterexample.
  template <class W>
  struct Check {
    bool             holds = true;
    std::optional<W> counterexample;

    explicit operator bool() const noexcept {
      return holds;
    }
    static Check pass() {
      return {};
    }
    static Check fail(W w) {
      return {false, std::move(w)};
    }
  };

  enum class Which { D, S, T };

  inline char const* to_string(Which w) {
    switch (w) {
      case Which::D: return "D";
      case Which::S: return "S";
      case Which::T: return "T";
    }
    return "?";
  }

  class DenominatorData {
   public:
    DenominatorData() = default;

    explicit DenominatorData(std::shared_ptr<FinCategory const> base)
        : base_(std::move(base)),
          d_(base_->morphism_count(), false),
          s_(base_->morphism_count(), false),
          t_(base_->morphism_count(), false) {}

    /// Unknown ids throw LoadError.
    static DenominatorData from_ids(std::shared_ptr<FinCategory const> base,
                                    std::vector<std::string> const& d,
                                    std::vector<std::string> const& s,
                                    std::vector<std::string> const& t) {
      DenominatorData dd(std::move(base));
      auto mark = [&](std::vector<std::string> const& ids, Which w) {
        for (auto const& id : ids) {
          auto f = dd.base_->find_morphism(id);
          if (!f) {
            throw LoadError("unknown morphism id '" + id + "' in " + to_string(w) + " denominators");
          }
          dd.set(w, *f, true);
        }
      };
      mark(d, Which::D);
      mark(s, Which::S);
      mark(t, Which::T);
      return dd;
    }

    FinCategory const& base() const {
      return *base_;
    }
    std::shared_ptr<FinCategory const> const& base_ptr() const {
      return base_;
    }

    bool in(Which w, MorId f) const {
      return bits(w)[index(f)];
    }
    bool in_D(MorId f) const {
      return d_[index(f)];
    }
    bool in_S(MorId f) const {
      return s_[index(f)];
    }
    bool in_T(MorId f) const {
      return t_[index(f)];
    }

    void set(Which w, MorId f, bool value = true) {
      mut_bits(w)[index(f)] = value;
    }

    std::vector<MorId> members(Which w) const {
      std::vector<MorId> out;
      auto const&        b = bits(w);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i]) {
          out.push_back(mor_id(i));
        }
      }
      return out;
    }

    std::vector<std::string> member_ids(Which w) const {
      std::vector<std::string> out;
      for (auto f : members(w)) {
        out.push_back(base_->name(f));
      }
      return out;
    }

    friend bool operator==(DenominatorData const& x, DenominatorData const& y) {
      return x.base_ == y.base_ && x.d_ == y.d_ && x.s_ == y.s_ && x.t_ == y.t_;
    }

   private:
    std::vector<bool> const& bits(Which w) const {
      return w == Which::D ? d_ : w == Which::S ? s_ : t_;
    }
    std::vector<bool>& mut_bits(Which w) {
      return w == Which::D ? d_ : w == Which::S ? s_ : t_;
    }

    std::shared_ptr<FinCategory const> base_;
    std::vector<bool>                  d_, s_, t_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Saturation ladder
  ////////////////////////////////////////////////////////////////////////

  /// Either a missing identity or a composable pair whose composite escapes.
  struct MultiplicativeFailure {
    std::optional<ObjId> missing_identity;
    MorId                first{};
    MorId                second{};
  };

  inline Check<MultiplicativeFailure> is_multiplicative(DenominatorData const& dd, Which w) {
    auto const& c = dd.base();
    for (auto x : c.objects()) {
      if (!dd.in(w, c.identity(x))) {
        return Check<MultiplicativeFailure>::fail({x, {}, {}});
      }
    }
    for (auto f : dd.members(w)) {
      for (auto g : dd.members(w)) {
        if (c.composable(f, g) && !dd.in(w, c.compose(f, g))) {
          return Check<MultiplicativeFailure>::fail({std::nullopt, f, g});
        }
      }
    }
    return Check<MultiplicativeFailure>::pass();
  }

  /// Witness (f, g, fg) with exactly two members in D.
  inline Check<std::array<MorId, 3>> is_two_of_three(DenominatorData const& dd) {
    auto const& c = dd.base();
    for (auto f : c.morphisms()) {
      for (auto y : c.objects()) {
        for (auto g : c.hom(c.tgt(f), y)) {
          auto fg = c.compose(f, g);
          int  n  = int(dd.in_D(f)) + int(dd.in_D(g)) + int(dd.in_D(fg));
          if (n == 2) {
            return Check<std::array<MorId, 3>>::fail({f, g, fg});
          }
        }
      }
    }
    return Check<std::array<MorId, 3>>::pass();
  }

  /// Witness (f, g, h) with fg, gh in D but one of f, g, h, fgh outside.
  inline Check<std::array<MorId, 3>> is_two_of_six(DenominatorData const& dd) {
    auto const& c = dd.base();
    for (auto f : c.morphisms()) {
      for (auto y : c.objects()) {
        for (auto g : c.hom(c.tgt(f), y)) {
          if (!dd.in_D(c.compose(f, g))) {
            continue;
          }
          for (auto z : c.objects()) {
            for (auto h : c.hom(y, z)) {
              if (!dd.in_D(c.compose(g, h))) {
                continue;
              }
              if (!dd.in_D(f) || !dd.in_D(g) || !dd.in_D(h) || !dd.in_D(c.compose(f, g, h))) {
                return Check<std::array<MorId, 3>>::fail({f, g, h});
              }
            }
          }
        }
      }
    }
    return Check<std::array<MorId, 3>>::pass();
  }

  enum class Saturation { none, multiplicative, semi_saturated, weakly_saturated };

  inline char const* to_string(Saturation s) {
    switch (s) {
      case Saturation::none: return "none";
      case Saturation::multiplicative: return "multiplicative";
      case Saturation::semi_saturated: return "semi-saturated";
      case Saturation::weakly_saturated: return "weakly-saturated";
    }
    return "?";
  }

  inline Saturation classify_saturation(DenominatorData const& dd) {
    if (!is_multiplicative(dd, Which::D)) {
      return Saturation::none;
    }
    if (is_two_of_six(dd)) {
      return Saturation::weakly_saturated;
    }
    if (is_two_of_three(dd)) {
      return Saturation::semi_saturated;
    }
    return Saturation::multiplicative;
  }

  ////////////////////////////////////////////////////////////////////////
  // Weak pushouts and pullbacks
  ////////////////////////////////////////////////////////////////////////

  /// Square  i f' = f i'  with i: A -> B, f: A -> C, f': B -> E, i': C -> E.
  inline bool is_weak_pushout(FinCategory const& c, MorId i, MorId f, MorId f2, MorId i2) {
    if (c.src(i) != c.src(f) || !c.composable(i, f2) || !c.composable(f, i2)
        || c.compose(i, f2) != c.compose(f, i2)) {
      throw DomainError("square (" + c.name(i) + ", " + c.name(f) + ", " + c.name(f2) + ", "
                        + c.name(i2) + ") does not commute");
    }
    ObjId const b = c.tgt(i), cc = c.tgt(f), e = c.tgt(f2);
    for (auto y : c.objects()) {
      for (auto u : c.hom(b, y)) {
        for (auto v : c.hom(cc, y)) {
          if (c.compose(i, u) != c.compose(f, v)) {
            continue;
          }
          bool found = false;
          for (auto w : c.hom(e, y)) {
            if (c.compose(f2, w) == u && c.compose(i2, w) == v) {
              found = true;
              break;
            }
          }
          if (!found) {
            return false;
          }
        }
      }
    }
    return true;
  }

  /// Square  p' f = f' p  with p: B -> E, f: C -> E, p': A -> C, f': A -> B.
  inline bool is_weak_pullback(FinCategory const& c, MorId p, MorId f, MorId p2, MorId f2) {
    if (c.tgt(p) != c.tgt(f) || !c.composable(p2, f) || !c.composable(f2, p)
        || c.compose(p2, f) != c.compose(f2, p)) {
      throw DomainError("square (" + c.name(p) + ", " + c.name(f) + ", " + c.name(p2) + ", "
                        + c.name(f2) + ") does not commute");
    }
    ObjId const b = c.src(p), cc = c.src(f), a = c.src(p2);
    for (auto y : c.objects()) {
      for (auto u : c.hom(y, b)) {
        for (auto v : c.hom(y, cc)) {
          if (c.compose(u, p) != c.compose(v, f)) {
            continue;
          }
          bool found = false;
          for (auto w : c.hom(y, a)) {
            if (c.compose(w, f2) == u && c.compose(w, p2) == v) {
              found = true;
              break;
            }
          }
          if (!found) {
            return false;
          }
        }
      }
    }
    return true;
  }

  enum class OreSide { pushout, pullback };

  /// Pushout side: den = i, den_prime = i', square i f' = f i'.
  /// Pullback side: den = p, den_prime = p', square p' f = f' p.
  struct OreWitness {
    OreSide side;
    MorId   den;
    MorId   f;
    MorId   f_prime;
    MorId   den_prime;
  };

  struct FactorisationWitness {
    MorId d;
    MorId i;
    MorId p;
  };

  /// Visits completions (f', i') of i ∈ S against f, in (f', i') index order,
  /// until `visit` returns false.
  template <class Visit>
  void for_each_pushout_completion(DenominatorData const& dd, MorId i, MorId f, Visit&& visit) {
    auto const& c = dd.base();
    for (auto f2 : c.morphisms()) {
      if (c.src(f2) != c.tgt(i)) {
        continue;
      }
      auto const e  = c.tgt(f2);
      auto const if2 = c.compose(i, f2);
      for (auto i2 : c.hom(c.tgt(f), e)) {
        if (!dd.in_S(i2) || c.compose(f, i2) != if2) {
          continue;
        }
        if (is_weak_pushout(c, i, f, f2, i2)) {
          if (!visit(OreWitness{OreSide::pushout, i, f, f2, i2})) {
            return;
          }
        }
      }
    }
  }

  /// Visits completions (f', p') of p ∈ T against f, in (f', p') index order.
  template <class Visit>
  void for_each_pullback_completion(DenominatorData const& dd, MorId p, MorId f, Visit&& visit) {
    auto const& c = dd.base();
    for (auto f2 : c.morphisms()) {
      if (c.tgt(f2) != c.src(p)) {
        continue;
      }
      auto const a   = c.src(f2);
      auto const f2p = c.compose(f2, p);
      for (auto p2 : c.hom(a, c.src(f))) {
        if (!dd.in_T(p2) || c.compose(p2, f) != f2p) {
          continue;
        }
        if (is_weak_pullback(c, p, f, p2, f2)) {
          if (!visit(OreWitness{OreSide::pullback, p, f, f2, p2})) {
            return;
          }
        }
      }
    }
  }

  /// Visits (i, p) with i ∈ S, p ∈ T, i p = d, T-part first in index order.
  template <class Visit>
  void for_each_factorisation(DenominatorData const& dd, MorId d, Visit&& visit) {
    auto const& c = dd.base();
    for (auto p : c.morphisms()) {
      if (c.tgt(p) != c.tgt(d) || !dd.in_T(p)) {
        continue;
      }
      for (auto i : c.hom(c.src(d), c.src(p))) {
        if (dd.in_S(i) && c.compose(i, p) == d) {
          if (!visit(FactorisationWitness{d, i, p})) {
            return;
          }
        }
      }
    }
  }

  inline std::vector<OreWitness> all_pushout_completions(DenominatorData const& dd, MorId i, MorId f) {
    std::vector<OreWitness> out;
    for_each_pushout_completion(dd, i, f, [&](OreWitness const& w) {
      out.push_back(w);
      return true;
    });
    return out;
  }

  inline std::vector<OreWitness> all_pullback_completions(DenominatorData const& dd, MorId p, MorId f) {
    std::vector<OreWitness> out;
    for_each_pullback_completion(dd, p, f, [&](OreWitness const& w) {
      out.push_back(w);
      return true;
    });
    return out;
  }

  inline std::vector<FactorisationWitness> all_factorisations(DenominatorData const& dd, MorId d) {
    std::vector<FactorisationWitness> out;
    for_each_factorisation(dd, d, [&](FactorisationWitness const& w) {
      out.push_back(w);
      return true;
    });
    return out;
  }

  /// Dense (den, f) -> first completion table.
  struct OreCache {
    std::size_t                            n = 0;
    std::vector<std::optional<OreWitness>> pushout;
    std::vector<std::optional<OreWitness>> pullback;
  };

  struct WUResult {
    bool                                holds = true;
    std::vector<std::pair<MorId, MorId>> pushout_failures;   // (i, f)
    std::vector<std::pair<MorId, MorId>> pullback_failures;  // (p, f)
    OreCache                            cache;

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  inline WUResult check_WU(DenominatorData const& dd) {
    auto const& c = dd.base();
    WUResult    r;
    r.cache.n = c.morphism_count();
    r.cache.pushout.assign(r.cache.n * r.cache.n, std::nullopt);
    r.cache.pullback.assign(r.cache.n * r.cache.n, std::nullopt);
    for (auto i : dd.members(Which::S)) {
      for (auto f : c.morphisms()) {
        if (c.src(f) != c.src(i)) {
          continue;
        }
        auto& slot = r.cache.pushout[index(i) * r.cache.n + index(f)];
        for_each_pushout_completion(dd, i, f, [&](OreWitness const& w) {
          slot = w;
          return false;
        });
        if (!slot) {
          r.holds = false;
          r.pushout_failures.emplace_back(i, f);
        }
      }
    }
    for (auto p : dd.members(Which::T)) {
      for (auto f : c.morphisms()) {
        if (c.tgt(f) != c.tgt(p)) {
          continue;
        }
        auto& slot = r.cache.pullback[index(p) * r.cache.n + index(f)];
        for_each_pullback_completion(dd, p, f, [&](OreWitness const& w) {
          slot = w;
          return false;
        });
        if (!slot) {
          r.holds = false;
          r.pullback_failures.emplace_back(p, f);
        }
      }
    }
    return r;
  }

  struct FacResult {
    bool                                              holds = true;
    std::vector<MorId>                                failures;
    std::vector<std::optional<FactorisationWitness>> cache;  // by d

    explicit operator bool() const noexcept {
      return holds;
    }
  };

  inline FacResult check_Fac(DenominatorData const& dd) {
    FacResult r;
    r.cache.assign(dd.base().morphism_count(), std::nullopt);
    for (auto d : dd.members(Which::D)) {
      for_each_factorisation(dd, d, [&](FactorisationWitness const& w) {
        r.cache[index(d)] = w;
        return false;
      });
      if (!r.cache[index(d)]) {
        r.holds = false;
        r.failures.push_back(d);
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Uni-fractionable structures
  ////////////////////////////////////////////////////////////////////////

  struct AxiomItem {
    std::string              name;
    bool                     passed = true;
    std::string              detail;
    std::vector<std::string> witness;  // key=value pairs, e.g. "i=e"
  };

  using ReportItem = AxiomItem;

  struct AxiomReport {
    std::vector<AxiomItem> items;
    WUResult               wu;
    FacResult              fac;

    bool ok() const {
      return std::all_of(items.begin(), items.end(), [](auto const& i) { return i.passed; });
    }
    std::vector<std::string> failed() const {
      std::vector<std::string> out;
      for (auto const& i : items) {
        if (!i.passed) {
          out.push_back(i.name);
        }
      }
      return out;
    }
    AxiomItem const* find(std::string_view name) const {
      for (auto const& i : items) {
        if (i.name == name) {
          return &i;
        }
      }
      return nullptr;
    }
  };

  namespace detail {
    inline AxiomItem multiplicative_item(DenominatorData const& dd, Which w) {
      AxiomItem item{std::string(to_string(w)) + " (Cat)", true, {}, {}};
      auto      r = is_multiplicative(dd, w);
      if (!r) {
        item.passed  = false;
        auto const& c = dd.base();
        auto const& x = *r.counterexample;
        if (x.missing_identity) {
          item.detail  = "identity of '" + c.name(*x.missing_identity) + "' missing";
          item.witness = {"object=" + c.name(*x.missing_identity)};
        } else {
          item.detail  = "composite not a member";
          item.witness = {"f=" + c.name(x.first), "g=" + c.name(x.second)};
        }
      }
      return item;
    }

    inline AxiomItem subset_item(DenominatorData const& dd, Which w) {
      AxiomItem item{std::string(to_string(w)) + " in D", true, {}, {}};
      for (auto f : dd.members(w)) {
        if (!dd.in_D(f)) {
          item.passed  = false;
          item.detail  = "member not in D";
          item.witness = {"f=" + dd.base().name(f)};
          break;
        }
      }
      return item;
    }
  }  // namespace detail

  /// Itemised check of every defining axiom. Items after "base" are only
  /// evaluated when the base is a category.
  inline AxiomReport is_uni_fractionable(DenominatorData const& dd) {
    AxiomReport report;
    auto const& c    = dd.base();
    auto        base = validate_category(c);
    AxiomItem   base_item{"base", base.ok(), {}, {}};
    if (!base.ok()) {
      base_item.detail = base.entries.front().kind + ": " + base.entries.front().message;
      report.items.push_back(base_item);
      return report;
    }
    report.items.push_back(base_item);
    report.items.push_back(detail::multiplicative_item(dd, Which::D));
    {
      AxiomItem item{"D (2 of 3)", true, {}, {}};
      auto      r = is_two_of_three(dd);
      if (!r) {
        auto const& w = *r.counterexample;
        item.passed   = false;
        item.detail   = "exactly two of f, g, fg in D";
        item.witness  = {"f=" + c.name(w[0]), "g=" + c.name(w[1]), "fg=" + c.name(w[2])};
      }
      report.items.push_back(item);
    }
    report.items.push_back(detail::multiplicative_item(dd, Which::S));
    report.items.push_back(detail::multiplicative_item(dd, Which::T));
    report.items.push_back(detail::subset_item(dd, Which::S));
    report.items.push_back(detail::subset_item(dd, Which::T));
    report.wu = check_WU(dd);
    {
      AxiomItem item{"(WU)", report.wu.holds, {}, {}};
      if (!report.wu.pushout_failures.empty()) {
        auto [i, f]  = report.wu.pushout_failures.front();
        item.detail  = "no weak pushout completion";
        item.witness = {"i=" + c.name(i), "f=" + c.name(f)};
      } else if (!report.wu.pullback_failures.empty()) {
        auto [p, f]  = report.wu.pullback_failures.front();
        item.detail  = "no weak pullback completion";
        item.witness = {"p=" + c.name(p), "f=" + c.name(f)};
      }
      report.items.push_back(item);
    }
    report.fac = check_Fac(dd);
    {
      AxiomItem item{"(Fac)", report.fac.holds, {}, {}};
      if (!report.fac.holds) {
        item.detail  = "no factorisation i p with i in S, p in T";
        item.witness = {"d=" + c.name(report.fac.failures.front())};
      }
      report.items.push_back(item);
    }
    return report;
  }

  /// Validated denominator data together with its witness caches.
  class UniFractionable {
   public:
    /// Throws AxiomError naming the first failed axiom.
    static std::shared_ptr<UniFractionable const> make(DenominatorData dd) {
      auto report = is_uni_fractionable(dd);
      for (auto const& item : report.items) {
        if (!item.passed) {
          std::string msg = "axiom " + item.name + " fails";
          if (!item.detail.empty()) {
            msg += ": " + item.detail;
          }
          for (auto const& w : item.witness) {
            msg += " " + w;
          }
          throw AxiomError(msg);
        }
      }
      auto uf    = std::make_shared<UniFractionable>();
      uf->dd_    = std::move(dd);
      uf->ore_   = std::move(report.wu.cache);
      uf->fac_   = std::move(report.fac.cache);
      return uf;
    }

    DenominatorData const& data() const noexcept {
      return dd_;
    }
    FinCategory const& base() const {
      return dd_.base();
    }

    /// Cached completion (f', i') with i f' = f i'.
    OreWitness const& pushout(MorId i, MorId f) const {
      auto const& w = ore_.pushout.at(index(i) * ore_.n + index(f));
      if (!w) {
        throw InvariantError("no cached pushout completion for (" + base().name(i) + ", "
                             + base().name(f) + ")");
      }
      return *w;
    }

    /// Cached completion (f', p') with p' f = f' p.
    OreWitness const& pullback(MorId p, MorId f) const {
      auto const& w = ore_.pullback.at(index(p) * ore_.n + index(f));
      if (!w) {
        throw InvariantError("no cached pullback completion for (" + base().name(p) + ", "
                             + base().name(f) + ")");
      }
      return *w;
    }

    FactorisationWitness const& factor(MorId d) const {
      auto const& w = fac_.at(index(d));
      if (!w) {
        throw InvariantError("no cached factorisation for '" + base().name(d) + "'");
      }
      return *w;
    }

   private:
    DenominatorData                                   dd_;
    OreCache                                          ore_;
    std::vector<std::optional<FactorisationWitness>> fac_;
  };

  using UfPtr = std::shared_ptr<UniFractionable const>;

  /// True iff F maps D, S and T into the corresponding target subsets.
  inline Check<std::pair<Which, MorId>> validate_uf_morphism(FunctorTable const&    F,
                                                             DenominatorData const& src,
                                                             DenominatorData const& tgt) {
    for (auto w : {Which::D, Which::S, Which::T}) {
      for (auto f : src.members(w)) {
        if (!tgt.in(w, F(f))) {
          return Check<std::pair<Which, MorId>>::fail({w, f});
        }
      }
    }
    return Check<std::pair<Which, MorId>>::pass();
  }

}  // namespace locfrac
