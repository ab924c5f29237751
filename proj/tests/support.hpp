#pragma once

// Test-side oracles. These recompute things from the raw composition table
// with plain loops and share no code with the library beyond FinCategory
// lookups, so agreement is meaningful.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "locfrac/locfrac.hpp"

namespace oracle {

  using namespace locfrac;

  inline MorId mor(FinCategory const& c, std::string const& name) {
    return *c.find_morphism(name);
  }

  inline ObjId obj(FinCategory const& c, std::string const& name) {
    return *c.find_object(name);
  }

  inline ThreeArrow arrow(DenominatorData const& dd, std::string const& text) {
    return parse_three_arrow(dd, text);
  }

  struct Triple {
    std::size_t b, f, a;
    auto operator<=>(Triple const&) const = default;
  };

  /// All (b, f, a) with b, a in D, src b = src f, tgt f = tgt a.
  inline std::vector<Triple> three_arrows(DenominatorData const& dd) {
    auto const&         c = dd.base();
    std::vector<Triple> out;
    std::size_t const   n = c.morphism_count();
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t a = 0; a < n; ++a) {
          if (dd.in_D(mor_id(b)) && dd.in_D(mor_id(a)) && c.src(mor_id(b)) == c.src(mor_id(f))
              && c.tgt(mor_id(f)) == c.tgt(mor_id(a))) {
            out.push_back({b, f, a});
          }
        }
      }
    }
    return out;
  }

  /// Fraction equality by breadth-first search over the generating moves
  /// (b,f,a) -> (b, f c, a c) with a c in D and (b,f,a) -> (c b, c f, a)
  /// with c b in D. Returns a component label per triple.
  struct Classes {
    std::vector<Triple>           arrows;
    std::map<Triple, std::size_t> label;
    std::size_t                   count = 0;

    bool equal(Triple const& x, Triple const& y) const {
      return label.at(x) == label.at(y);
    }
    bool equal(ThreeArrow const& x, ThreeArrow const& y) const {
      return equal(Triple{index(x.b), index(x.f), index(x.a)}, Triple{index(y.b), index(y.f), index(y.a)});
    }
  };

  inline Classes fraction_classes(DenominatorData const& dd) {
    auto const&                                 c = dd.base();
    Classes                                     out;
    out.arrows                                  = three_arrows(dd);
    std::map<Triple, std::vector<Triple>>       adj;
    auto link = [&](Triple x, Triple y) {
      adj[x].push_back(y);
      adj[y].push_back(x);
    };
    std::size_t const n = c.morphism_count();
    for (auto const& t : out.arrows) {
      for (std::size_t k = 0; k < n; ++k) {
        MorId const m = mor_id(k);
        if (c.src(m) == c.tgt(mor_id(t.f))) {
          MorId const ac = c.compose(mor_id(t.a), m);
          if (dd.in_D(ac)) {
            link(t, {t.b, index(c.compose(mor_id(t.f), m)), index(ac)});
          }
        }
        if (c.tgt(m) == c.src(mor_id(t.f))) {
          MorId const cb = c.compose(m, mor_id(t.b));
          if (dd.in_D(cb)) {
            link(t, {index(cb), index(c.compose(m, mor_id(t.f))), t.a});
          }
        }
      }
    }
    for (auto const& t : out.arrows) {
      if (out.label.count(t)) {
        continue;
      }
      std::deque<Triple> queue{t};
      out.label[t] = out.count;
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        for (auto const& y : adj[x]) {
          if (!out.label.count(y)) {
            out.label[y] = out.count;
            queue.push_back(y);
          }
        }
      }
      ++out.count;
    }
    return out;
  }

  /// Brute-force (2 of 6) counterexample search.
  inline std::optional<std::array<MorId, 3>> two_of_six_counterexample(DenominatorData const& dd) {
    auto const& c = dd.base();
    for (auto f : c.morphisms()) {
      for (auto g : c.morphisms()) {
        for (auto h : c.morphisms()) {
          if (c.tgt(f) != c.src(g) || c.tgt(g) != c.src(h)) {
            continue;
          }
          auto fg = c.compose(f, g), gh = c.compose(g, h);
          if (dd.in_D(fg) && dd.in_D(gh)
              && !(dd.in_D(f) && dd.in_D(g) && dd.in_D(h) && dd.in_D(c.compose(fg, h)))) {
            return std::array<MorId, 3>{f, g, h};
          }
        }
      }
    }
    return std::nullopt;
  }

  /// Classes of the oracle partition containing a triple with middle in D.
  inline std::size_t denominator_middle_count(DenominatorData const& dd, Classes const& cls) {
    std::set<std::size_t> out;
    for (auto const& t : cls.arrows) {
      if (dd.in_D(mor_id(t.f))) {
        out.insert(cls.label.at(t));
      }
    }
    return out.size();
  }

  /// Number of morphisms of a finite category with a two-sided inverse,
  /// by scanning the table.
  inline std::size_t isomorphism_count(FinCategory const& c) {
    std::size_t n = 0;
    for (auto f : c.morphisms()) {
      for (auto g : c.morphisms()) {
        if (c.src(g) == c.tgt(f) && c.tgt(g) == c.src(f) && c.is_identity(c.compose(f, g))
            && c.is_identity(c.compose(g, f))) {
          ++n;
          break;
        }
      }
    }
    return n;
  }

  struct ChoiceSweep {
    std::size_t strict = 0, lax = 0, divergences = 0;
  };

  /// Composes t1 then t2 under every strict witness choice and every lax
  /// completion and counts results outside the class of the built table.
  inline ChoiceSweep choice_sweep(FractionCategory const& fc, ThreeArrow const& t1, ThreeArrow const& t2) {
    auto const& c        = fc.base();
    MorId const expected = fc.compose(fc.cls(t1), fc.cls(t2));
    ChoiceSweep s;
    for_each_strict_composite(fc.data(), t1, t2, [&](ThreeArrow const& r) {
      ++s.strict;
      s.divergences += fc.cls(r) != expected;
    });
    for_each_lax_completion(fc.data(), t1, t2, [&](LaxCompletion const& x) {
      ++s.lax;
      s.divergences += fc.cls(lax_composite(c, t1, t2, x)) != expected;
      return true;
    });
    if (s.strict == 0 || s.lax == 0) {
      ++s.divergences;
    }
    return s;
  }

}  // namespace oracle
