#pragma once

// 3-arrows X <=b . ->f . <=a Y, fraction equality and normal forms.

#include <compare>
#include <sstream>
#include <string>
#include <vector>

#include "locfrac/denominators.hpp"

namespace locfrac {

  struct ThreeArrow {
    MorId b{};
    MorId f{};
    MorId a{};

    friend auto operator<=>(ThreeArrow const&, ThreeArrow const&) = default;
  };

  inline ObjId source(FinCategory const& c, ThreeArrow const& t) {
    return c.tgt(t.b);
  }
  inline ObjId target(FinCategory const& c, ThreeArrow const& t) {
    return c.src(t.a);
  }

  inline bool is_three_arrow(DenominatorData const& dd, ThreeArrow const& t) {
    auto const& c = dd.base();
    return dd.in_D(t.b) && dd.in_D(t.a) && c.src(t.f) == c.src(t.b) && c.tgt(t.f) == c.tgt(t.a);
  }

  inline bool is_normal(DenominatorData const& dd, ThreeArrow const& t) {
    return is_three_arrow(dd, t) && dd.in_T(t.b) && dd.in_S(t.a);
  }

  inline bool parallel(FinCategory const& c, ThreeArrow const& x, ThreeArrow const& y) {
    return source(c, x) == source(c, y) && target(c, x) == target(c, y);
  }

  inline ThreeArrow identity_arrow(FinCategory const& c, ObjId x) {
    auto one = c.identity(x);
    return {one, one, one};
  }

  inline std::string format(FinCategory const& c, ThreeArrow const& t) {
    return c.name(t.b) + "," + c.name(t.f) + "," + c.name(t.a);
  }

  /// Parses "b,f,a". Throws DomainError on bad syntax, unknown ids or when
  /// the triple is not a 3-arrow.
  inline ThreeArrow parse_three_arrow(DenominatorData const& dd, std::string_view text) {
    std::vector<std::string> parts;
    std::string              cur;
    for (char ch : text) {
      if (ch == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3) {
      throw DomainError("expected b,f,a but got '" + std::string(text) + "'");
    }
    auto const& c = dd.base();
    ThreeArrow  t{c.morphism(parts[0]), c.morphism(parts[1]), c.morphism(parts[2])};
    if (!is_three_arrow(dd, t)) {
      throw DomainError("'" + std::string(text) + "' is not a 3-arrow");
    }
    return t;
  }

  /// All 3-arrows in lexicographic (b, f, a) index order.
  inline std::vector<ThreeArrow> enumerate_three_arrows(DenominatorData const& dd) {
    auto const&             c = dd.base();
    std::vector<ThreeArrow> out;
    for (auto b : dd.members(Which::D)) {
      for (auto f : c.morphisms()) {
        if (c.src(f) != c.src(b)) {
          continue;
        }
        for (auto a : dd.members(Which::D)) {
          if (c.tgt(a) == c.tgt(f)) {
            out.push_back({b, f, a});
          }
        }
      }
    }
    return out;
  }

  /// Dense triple -> position lookup over an enumerated list.
  class ThreeArrowIndex {
   public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    ThreeArrowIndex() = default;
    ThreeArrowIndex(std::size_t morphisms, std::vector<ThreeArrow> const& arrows)
        : n_(morphisms), slot_(morphisms * morphisms * morphisms, kNone) {
      for (std::size_t k = 0; k < arrows.size(); ++k) {
        slot_[key(arrows[k])] = static_cast<std::uint32_t>(k);
      }
    }

    std::optional<std::size_t> find(ThreeArrow const& t) const {
      auto s = slot_[key(t)];
      if (s == kNone) {
        return std::nullopt;
      }
      return s;
    }

   private:
    std::size_t key(ThreeArrow const& t) const {
      return (index(t.b) * n_ + index(t.f)) * n_ + index(t.a);
    }

    std::size_t                n_ = 0;
    std::vector<std::uint32_t> slot_;
  };

  ////////////////////////////////////////////////////////////////////////
  // Fraction equality
  ////////////////////////////////////////////////////////////////////////

  enum class GeneratorFamily {
    two_sided,  // (b,f,a) ~ (b, fc, ac) and (b,f,a) ~ (cb, cf, a)
    one_step,   // (b,f,a) ~ (c'b, c'fc, ac)
    span        // (b,f,a) ~ (b~,f~,a~) with b = c'b~, fc = c'f~, ac = a~
  };

  using GeneratorPair = std::pair<ThreeArrow, ThreeArrow>;

  namespace detail {
    inline void require_denominator(DenominatorData const& dd, MorId c) {
      if (!dd.in_D(c)) {
        throw InvariantError("connecting morphism '" + dd.base().name(c)
                             + "' is not a denominator; D is not semi-saturated");
      }
    }
  }  // namespace detail

  /// Visits every generating pair of the chosen family.
  template <class Visit>
  void for_each_generator(DenominatorData const& dd, GeneratorFamily family, Visit&& visit) {
    auto const& c      = dd.base();
    auto const  arrows = enumerate_three_arrows(dd);
    for (auto const& t : arrows) {
      ObjId const xt = c.src(t.b);  // left apex
      ObjId const yt = c.tgt(t.f);  // right apex
      switch (family) {
        case GeneratorFamily::two_sided:
          for (auto z : c.objects()) {
            for (auto cm : c.hom(yt, z)) {
              auto ac = c.compose(t.a, cm);
              if (dd.in_D(ac)) {
                detail::require_denominator(dd, cm);
                visit(GeneratorPair{t, {t.b, c.compose(t.f, cm), ac}});
              }
            }
            for (auto cm : c.hom(z, xt)) {
              auto cb = c.compose(cm, t.b);
              if (dd.in_D(cb)) {
                detail::require_denominator(dd, cm);
                visit(GeneratorPair{t, {cb, c.compose(cm, t.f), t.a}});
              }
            }
          }
          break;
        case GeneratorFamily::one_step:
          for (auto z : c.objects()) {
            for (auto cm : c.hom(yt, z)) {
              auto ac = c.compose(t.a, cm);
              if (!dd.in_D(ac)) {
                continue;
              }
              detail::require_denominator(dd, cm);
              auto fc = c.compose(t.f, cm);
              for (auto w : c.objects()) {
                for (auto cp : c.hom(w, xt)) {
                  auto cb = c.compose(cp, t.b);
                  if (dd.in_D(cb)) {
                    detail::require_denominator(dd, cp);
                    visit(GeneratorPair{t, {cb, c.compose(cp, fc), ac}});
                  }
                }
              }
            }
          }
          break;
        case GeneratorFamily::span:
          for (auto z : c.objects()) {
            for (auto cm : c.hom(yt, z)) {
              auto ac = c.compose(t.a, cm);
              if (!dd.in_D(ac)) {
                continue;
              }
              auto fc = c.compose(t.f, cm);
              for (auto w : c.objects()) {
                for (auto cp : c.hom(xt, w)) {
                  for (auto bt : c.hom(w, c.tgt(t.b))) {
                    if (!dd.in_D(bt) || c.compose(cp, bt) != t.b) {
                      continue;
                    }
                    for (auto ft : c.hom(w, z)) {
                      if (c.compose(cp, ft) == fc) {
                        detail::require_denominator(dd, cm);
                        detail::require_denominator(dd, cp);
                        visit(GeneratorPair{t, {bt, ft, ac}});
                      }
                    }
                  }
                }
              }
            }
          }
          break;
      }
    }
  }

  inline std::vector<GeneratorPair> fraction_generators(DenominatorData const& dd,
                                                        GeneratorFamily        family) {
    std::vector<GeneratorPair> out;
    for_each_generator(dd, family, [&](GeneratorPair const& p) { out.push_back(p); });
    return out;
  }

  /// The classes of fraction equality. Class k is named "q<n>" where n is
  /// the position of its smallest member in `arrows`.
  struct FractionPartition {
    std::vector<ThreeArrow>  arrows;
    ThreeArrowIndex          lookup;
    std::vector<std::size_t> class_of;        // arrow position -> class
    std::vector<std::size_t> representative;  // class -> smallest member
    std::vector<std::vector<std::size_t>> members;
    FinGraph                 quotient;        // objects = base objects, arrows = classes

    std::size_t class_count() const noexcept {
      return representative.size();
    }

    std::size_t position(ThreeArrow const& t) const {
      auto k = lookup.find(t);
      if (!k) {
        throw DomainError("not an enumerated 3-arrow");
      }
      return *k;
    }

    std::size_t class_of_arrow(ThreeArrow const& t) const {
      return class_of[position(t)];
    }

    ThreeArrow const& rep(std::size_t cls) const {
      return arrows[representative[cls]];
    }

    std::string class_name(std::size_t cls) const {
      return "q" + std::to_string(representative[cls]);
    }

    bool equal(ThreeArrow const& x, ThreeArrow const& y) const {
      return class_of_arrow(x) == class_of_arrow(y);
    }
  };

  inline FinGraph three_arrow_graph(FinCategory const& c, std::vector<ThreeArrow> const& arrows) {
    FinGraph g;
    g.object_count = c.object_count();
    for (auto const& t : arrows) {
      g.src.push_back(index(source(c, t)));
      g.tgt.push_back(index(target(c, t)));
    }
    return g;
  }

  inline FractionPartition fraction_equivalence(DenominatorData const& dd,
                                                GeneratorFamily family = GeneratorFamily::two_sided) {
    FractionPartition part;
    auto const&       c = dd.base();
    part.arrows         = enumerate_three_arrows(dd);
    part.lookup         = ThreeArrowIndex(c.morphism_count(), part.arrows);
    GraphCongruence cong(three_arrow_graph(c, part.arrows));
    for_each_generator(dd, family, [&](GeneratorPair const& p) {
      cong.relate(part.position(p.first), part.position(p.second));
    });
    auto q              = quotient_graph(std::move(cong));
    part.class_of       = std::move(q.projection.arrow_map);
    part.representative = std::move(q.representative);
    part.quotient       = std::move(q.graph);
    part.members.assign(part.representative.size(), {});
    for (std::size_t k = 0; k < part.arrows.size(); ++k) {
      part.members[part.class_of[k]].push_back(k);
    }
    return part;
  }

  /// True iff the middle of t is a denominator (a class invariant).
  inline bool is_denominator_class(DenominatorData const& dd, FractionPartition const&,
                                   ThreeArrow const& t) {
    return dd.in_D(t.f);
  }

  ////////////////////////////////////////////////////////////////////////
  // Normal forms
  ////////////////////////////////////////////////////////////////////////

  /// Replays the normalisation construction with the cached witnesses:
  /// b = i p; i f' = f i'; a i' = j q; q' f' = f'' q; result (q'p, f'', j).
  inline ThreeArrow normalise(UniFractionable const& uf, ThreeArrow const& t) {
    auto const& c = uf.base();
    if (!is_three_arrow(uf.data(), t)) {
      throw DomainError("normalise: input is not a 3-arrow");
    }
    auto const& fb   = uf.factor(t.b);
    auto const& po   = uf.pushout(fb.i, t.f);
    auto const& fa   = uf.factor(c.compose(t.a, po.den_prime));
    auto const& pb   = uf.pullback(fa.p, po.f_prime);
    ThreeArrow  out{c.compose(pb.den_prime, fb.p), pb.f_prime, fa.i};
    if (!is_normal(uf.data(), out)) {
      throw InvariantError("normalise produced a non-normal 3-arrow");
    }
    return out;
  }

  enum class ShareMode { source, target, parallel };

  namespace detail {
    // Normal inputs with common source -> common p.
    inline std::pair<ThreeArrow, ThreeArrow> share_p(UniFractionable const& uf, ThreeArrow n1,
                                                     ThreeArrow n2) {
      auto const& c  = uf.base();
      auto const& pb = uf.pullback(n2.b, n1.b);  // p1'' p1 = p1' p2 with p1'' in T
      MorId const p  = c.compose(pb.den_prime, n1.b);
      return {{p, c.compose(pb.den_prime, n1.f), n1.a}, {p, c.compose(pb.f_prime, n2.f), n2.a}};
    }

    // Normal inputs with common target -> common i.
    inline std::pair<ThreeArrow, ThreeArrow> share_i(UniFractionable const& uf, ThreeArrow n1,
                                                     ThreeArrow n2) {
      auto const& c  = uf.base();
      auto const& po = uf.pushout(n1.a, n2.a);  // i1 i2' = i2 i1' with i1' in S
      MorId const i  = c.compose(n2.a, po.den_prime);
      return {{n1.b, c.compose(n1.f, po.f_prime), i}, {n2.b, c.compose(n2.f, po.den_prime), i}};
    }
  }  // namespace detail

  /// Normal representatives of t1, t2 sharing p (source), i (target) or both.
  inline std::pair<ThreeArrow, ThreeArrow> common_denominator(UniFractionable const& uf,
                                                              ThreeArrow const& t1,
                                                              ThreeArrow const& t2,
                                                              ShareMode         mode) {
    auto const& c = uf.base();
    bool const  same_src = source(c, t1) == source(c, t2);
    bool const  same_tgt = target(c, t1) == target(c, t2);
    if ((mode != ShareMode::target && !same_src) || (mode != ShareMode::source && !same_tgt)) {
      throw DomainError("common_denominator: endpoints of " + format(c, t1) + " and "
                        + format(c, t2) + " do not agree");
    }
    auto n1 = normalise(uf, t1);
    auto n2 = normalise(uf, t2);
    switch (mode) {
      case ShareMode::source: return detail::share_p(uf, n1, n2);
      case ShareMode::target: return detail::share_i(uf, n1, n2);
      case ShareMode::parallel: {
        auto [m1, m2] = detail::share_p(uf, n1, n2);
        return detail::share_i(uf, m1, m2);
      }
    }
    return {n1, n2};
  }

}  // namespace locfrac
