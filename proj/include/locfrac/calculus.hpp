#pragma once

// Search-based decision procedures on commutative grids: factorisation
// squares, 3x3 equality witnesses, mixed composite squares and flipping.

#include <optional>
#include <string>
#include <vector>

#include "locfrac/fraction_category.hpp"

namespace locfrac {

  ////////////////////////////////////////////////////////////////////////
  // Factorisation squares
  ////////////////////////////////////////////////////////////////////////

  enum class Given { none, left, right };

  /// For a square f e = d g (d: A -> B, f: A -> C, e: C -> E, g: B -> E):
  /// d = i p, e = j q, f j = i h, p g = h q.
  struct FactorisationSquare {
    MorId i, p, j, q, h;
  };

  /// Refinement of a given (j, q): e = j~ q~, j~ = j k, q = k q~ with
  /// f j~ = i h and p g = h q~.
  struct SRefinement {
    MorId j_tilde, k, q_tilde, h;
  };

  /// Refinement of a given (i, p): d = i~ p~, i = i~ r, p~ = r p with
  /// f j = i~ h and p~ g = h q.
  struct TRefinement {
    MorId i_tilde, r, p_tilde, h;
  };

  namespace detail {
    inline void require_square(DenominatorData const& dd, MorId d, MorId e, MorId f, MorId g) {
      auto const& c = dd.base();
      if (!dd.in_D(d) || !dd.in_D(e)) {
        throw DomainError("factorisation square needs d, e in D");
      }
      if (c.src(f) != c.src(d) || !c.composable(f, e) || !c.composable(d, g)
          || c.compose(f, e) != c.compose(d, g)) {
        throw DomainError("square f e = d g does not commute");
      }
    }

    inline void require_factorisation(DenominatorData const& dd, MorId den, MorId s, MorId t) {
      auto const& c = dd.base();
      if (!dd.in_S(s) || !dd.in_T(t) || !c.composable(s, t) || c.compose(s, t) != den) {
        throw DomainError("supplied pair is not an S-T factorisation of '" + c.name(den) + "'");
      }
    }
  }  // namespace detail

  /// Index-smallest witness in (p, i, q, j, h) order; `supplied` fixes (i, p)
  /// for Given::left or (j, q) for Given::right.
  inline FactorisationSquare factorisation_square(DenominatorData const& dd, MorId d, MorId e,
                                                  MorId f, MorId g, Given given = Given::none,
                                                  std::optional<std::pair<MorId, MorId>> supplied = {}) {
    auto const& c = dd.base();
    detail::require_square(dd, d, e, f, g);
    std::vector<FactorisationWitness> left, right;
    if (given != Given::none && !supplied) {
      throw DomainError("factorisation square: given side without a supplied factorisation");
    }
    if (given == Given::left) {
      detail::require_factorisation(dd, d, supplied->first, supplied->second);
      left = {{d, supplied->first, supplied->second}};
    } else {
      left = all_factorisations(dd, d);
    }
    if (given == Given::right) {
      detail::require_factorisation(dd, e, supplied->first, supplied->second);
      right = {{e, supplied->first, supplied->second}};
    } else {
      right = all_factorisations(dd, e);
    }
    for (auto const& l : left) {
      for (auto const& r : right) {
        MorId const fj = c.compose(f, r.i);
        MorId const pg = c.compose(l.p, g);
        for (auto h : c.hom(c.tgt(l.i), c.tgt(r.i))) {
          if (c.compose(l.i, h) == fj && c.compose(h, r.p) == pg) {
            return {l.i, l.p, r.i, r.p, h};
          }
        }
      }
    }
    throw InvariantError("no factorisation square exists; the axioms must have failed");
  }

  inline SRefinement factorisation_lemma_s(DenominatorData const& dd, MorId d, MorId e, MorId f,
                                           MorId g, MorId i, MorId p, MorId j, MorId q) {
    auto const& c = dd.base();
    detail::require_square(dd, d, e, f, g);
    detail::require_factorisation(dd, d, i, p);
    detail::require_factorisation(dd, e, j, q);
    MorId const pg = c.compose(p, g);
    for (auto k : dd.members(Which::S)) {
      if (c.src(k) != c.tgt(j)) {
        continue;
      }
      MorId const jt = c.compose(j, k);
      MorId const fj = c.compose(f, jt);
      for (auto qt : c.hom(c.tgt(k), c.tgt(q))) {
        if (!dd.in_T(qt) || c.compose(k, qt) != q) {
          continue;
        }
        for (auto h : c.hom(c.tgt(i), c.tgt(k))) {
          if (c.compose(i, h) == fj && c.compose(h, qt) == pg) {
            return {jt, k, qt, h};
          }
        }
      }
    }
    throw InvariantError("no S-side refinement exists; the axioms must have failed");
  }

  inline TRefinement factorisation_lemma_t(DenominatorData const& dd, MorId d, MorId e, MorId f,
                                           MorId g, MorId i, MorId p, MorId j, MorId q) {
    auto const& c = dd.base();
    detail::require_square(dd, d, e, f, g);
    detail::require_factorisation(dd, d, i, p);
    detail::require_factorisation(dd, e, j, q);
    MorId const fj = c.compose(f, j);
    for (auto r : dd.members(Which::T)) {
      if (c.tgt(r) != c.tgt(i)) {
        continue;
      }
      MorId const pt = c.compose(r, p);
      MorId const pg = c.compose(pt, g);
      for (auto it : c.hom(c.src(i), c.src(r))) {
        if (!dd.in_S(it) || c.compose(it, r) != i) {
          continue;
        }
        for (auto h : c.hom(c.src(r), c.tgt(j))) {
          if (c.compose(it, h) == fj && c.compose(h, q) == pg) {
            return {it, r, pt, h};
          }
        }
      }
    }
    throw InvariantError("no T-side refinement exists; the axioms must have failed");
  }

  ////////////////////////////////////////////////////////////////////////
  // Grid search
  ////////////////////////////////////////////////////////////////////////

  /// Rows top = (b1,f1,a1), two middle rows, bottom = (b2,f2,a2); outer
  /// verticals left = (P1,G1,I1), right = (P2,G2,I2); inner verticals
  /// col2 = (p~1,g~1,i~1), col3 = (p~2,g~2,i~2). Equations, row by row:
  ///   b~1 P1 = p~1 b1   f~1 p~2 = p~1 f1   a~1 p~2 = P2 a1
  ///   b~1 G1 = g~1 b~2  f~1 g~2 = g~1 f~2  a~1 g~2 = G2 a~2
  ///   b2 I1  = i~1 b~2  f2 i~2  = i~1 f~2  a2 i~2  = I2 a~2
  struct Grid {
    ThreeArrow top, row2, row3, bottom;
    ThreeArrow left, col2, col3, right;
  };

  struct GridOptions {
    bool inner_middle_in_D = false;  // g~k in D
    bool normal_rows       = false;  // b~k in T and a~k in S
  };

  /// Every violated equation or membership, as text. Empty iff valid.
  inline std::vector<std::string> grid_violations(DenominatorData const& dd, Grid const& w,
                                                  GridOptions opt) {
    auto const&              c = dd.base();
    std::vector<std::string> out;
    auto eq = [&](char const* name, MorId x1, MorId y1, MorId x2, MorId y2) {
      auto l = c.try_compose(x1, y1);
      auto r = c.try_compose(x2, y2);
      if (!l || !r || *l != *r) {
        out.emplace_back(name);
      }
    };
    auto member = [&](char const* name, bool ok) {
      if (!ok) {
        out.emplace_back(name);
      }
    };
    for (auto const* row : {&w.top, &w.row2, &w.row3, &w.bottom}) {
      if (!is_three_arrow(dd, *row)) {
        out.emplace_back("row is not a 3-arrow");
      }
    }
    for (auto const* col : {&w.left, &w.col2, &w.col3, &w.right}) {
      if (!is_normal(dd, *col)) {
        out.emplace_back("vertical is not normal");
      }
    }
    if (!out.empty()) {
      return out;
    }
    eq("b~1 P1 = p~1 b1", w.row2.b, w.left.b, w.col2.b, w.top.b);
    eq("f~1 p~2 = p~1 f1", w.row2.f, w.col3.b, w.col2.b, w.top.f);
    eq("a~1 p~2 = P2 a1", w.row2.a, w.col3.b, w.right.b, w.top.a);
    eq("b~1 G1 = g~1 b~2", w.row2.b, w.left.f, w.col2.f, w.row3.b);
    eq("f~1 g~2 = g~1 f~2", w.row2.f, w.col3.f, w.col2.f, w.row3.f);
    eq("a~1 g~2 = G2 a~2", w.row2.a, w.col3.f, w.right.f, w.row3.a);
    eq("b2 I1 = i~1 b~2", w.bottom.b, w.left.a, w.col2.a, w.row3.b);
    eq("f2 i~2 = i~1 f~2", w.bottom.f, w.col3.a, w.col2.a, w.row3.f);
    eq("a2 i~2 = I2 a~2", w.bottom.a, w.col3.a, w.right.a, w.row3.a);
    if (opt.inner_middle_in_D) {
      member("g~1 in D", dd.in_D(w.col2.f));
      member("g~2 in D", dd.in_D(w.col3.f));
    }
    if (opt.normal_rows) {
      member("middle rows normal", is_normal(dd, w.row2) && is_normal(dd, w.row3));
    }
    return out;
  }

  namespace detail {
    struct LeftPart {  // column 2 with b~1, b~2
      MorId pt, bt1, it, bt2, gt;
    };
    struct RightPart {  // column 3 with a~1, a~2
      MorId pt, at1, it, at2, gt;
    };

    inline std::vector<LeftPart> left_parts(DenominatorData const& dd, Grid const& g, GridOptions opt) {
      auto const&           c = dd.base();
      std::vector<LeftPart> out;
      ObjId const           a_prime = c.src(g.left.b);
      ObjId const           c_prime = c.tgt(g.left.a);
      auto row_ok = [&](MorId b) { return dd.in_D(b) && (!opt.normal_rows || dd.in_T(b)); };
      for (auto pt : dd.members(Which::T)) {
        if (c.tgt(pt) != c.src(g.top.b)) {
          continue;
        }
        MorId const top = c.compose(pt, g.top.b);
        for (auto bt1 : c.hom(c.src(pt), a_prime)) {
          if (!row_ok(bt1) || c.compose(bt1, g.left.b) != top) {
            continue;
          }
          MorId const mid = c.compose(bt1, g.left.f);
          for (auto it : dd.members(Which::S)) {
            if (c.src(it) != c.src(g.bottom.b)) {
              continue;
            }
            MorId const bot = c.compose(g.bottom.b, g.left.a);
            for (auto bt2 : c.hom(c.tgt(it), c_prime)) {
              if (!row_ok(bt2) || c.compose(it, bt2) != bot) {
                continue;
              }
              for (auto gt : c.hom(c.src(pt), c.tgt(it))) {
                if ((!opt.inner_middle_in_D || dd.in_D(gt)) && c.compose(gt, bt2) == mid) {
                  out.push_back({pt, bt1, it, bt2, gt});
                }
              }
            }
          }
        }
      }
      return out;
    }

    inline std::vector<RightPart> right_parts(DenominatorData const& dd, Grid const& g,
                                              GridOptions opt) {
      auto const&            c = dd.base();
      std::vector<RightPart> out;
      ObjId const            b_prime = c.src(g.right.b);
      ObjId const            d_prime = c.tgt(g.right.a);
      auto row_ok = [&](MorId a) { return dd.in_D(a) && (!opt.normal_rows || dd.in_S(a)); };
      MorId const top = c.compose(g.right.b, g.top.a);
      for (auto pt : dd.members(Which::T)) {
        if (c.tgt(pt) != c.tgt(g.top.f)) {
          continue;
        }
        for (auto at1 : c.hom(b_prime, c.src(pt))) {
          if (!row_ok(at1) || c.compose(at1, pt) != top) {
            continue;
          }
          for (auto it : dd.members(Which::S)) {
            if (c.src(it) != c.tgt(g.bottom.f)) {
              continue;
            }
            MorId const bot = c.compose(g.bottom.a, it);
            for (auto at2 : c.hom(d_prime, c.tgt(it))) {
              if (!row_ok(at2) || c.compose(g.right.a, at2) != bot) {
                continue;
              }
              MorId const mid = c.compose(g.right.f, at2);
              for (auto gt : c.hom(c.src(pt), c.tgt(it))) {
                if ((!opt.inner_middle_in_D || dd.in_D(gt)) && c.compose(at1, gt) == mid) {
                  out.push_back({pt, at1, it, at2, gt});
                }
              }
            }
          }
        }
      }
      return out;
    }

    /// Fills rows 2, 3 and columns 2, 3 of `g`; outer data must be set.
    inline bool grid_search(DenominatorData const& dd, Grid& g, GridOptions opt) {
      auto const& c     = dd.base();
      auto const  lefts = left_parts(dd, g, opt);
      if (lefts.empty()) {
        return false;
      }
      auto const rights = right_parts(dd, g, opt);
      for (auto const& l : lefts) {
        MorId const top_f = c.compose(l.pt, g.top.f);
        for (auto const& r : rights) {
          MorId const bot_f = c.compose(g.bottom.f, r.it);
          for (auto ft1 : c.hom(c.src(l.pt), c.src(r.pt))) {
            if (c.compose(ft1, r.pt) != top_f) {
              continue;
            }
            MorId const mid = c.compose(ft1, r.gt);
            for (auto ft2 : c.hom(c.tgt(l.it), c.tgt(r.it))) {
              if (c.compose(l.it, ft2) == bot_f && c.compose(l.gt, ft2) == mid) {
                g.row2 = {l.bt1, ft1, r.at1};
                g.row3 = {l.bt2, ft2, r.at2};
                g.col2 = {l.pt, l.gt, l.it};
                g.col3 = {r.pt, r.gt, r.it};
                return true;
              }
            }
          }
        }
      }
      return false;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // 3x3 equality witnesses
  ////////////////////////////////////////////////////////////////////////

  /// Rows t1, (b~1,f~1,a~1), (b~2,f~2,a~2), t2; verticals (p1,d1,i1) and
  /// (p2,d2,i2) between the inner columns, identities on the outside.
  struct ThreeByThreeWitness {
    ThreeArrow rows[4];
    ThreeArrow vertical1;  // (p1, d1, i1)
    ThreeArrow vertical2;  // (p2, d2, i2)
    bool       normal_rows = false;
  };

  inline Grid as_grid(FinCategory const& c, ThreeByThreeWitness const& w) {
    return {w.rows[0],
            w.rows[1],
            w.rows[2],
            w.rows[3],
            identity_arrow(c, source(c, w.rows[0])),
            w.vertical1,
            w.vertical2,
            identity_arrow(c, target(c, w.rows[0]))};
  }

  inline std::vector<std::string> validate_witness(DenominatorData const& dd,
                                                   ThreeByThreeWitness const& w) {
    auto const& c = dd.base();
    if (!parallel(c, w.rows[0], w.rows[3])) {
      return {"outer rows are not parallel"};
    }
    return grid_violations(dd, as_grid(c, w), {true, w.normal_rows});
  }

  struct EqualityResult {
    bool                               equal = false;
    std::optional<ThreeByThreeWitness> witness;
  };

  /// Searches for a 3x3 witness. For normal inputs a witness with normal
  /// middle rows is tried first.
  inline EqualityResult equal_by_3x3(DenominatorData const& dd, ThreeArrow const& t1,
                                     ThreeArrow const& t2) {
    auto const& c = dd.base();
    if (!is_three_arrow(dd, t1) || !is_three_arrow(dd, t2)) {
      throw DomainError("equal_by_3x3: inputs must be 3-arrows");
    }
    if (!parallel(c, t1, t2)) {
      throw DomainError("equal_by_3x3: " + format(c, t1) + " and " + format(c, t2)
                        + " are not parallel");
    }
    Grid g{t1, {}, {}, t2, identity_arrow(c, source(c, t1)), {}, {},
           identity_arrow(c, target(c, t1))};
    bool const both_normal = is_normal(dd, t1) && is_normal(dd, t2);
    if (both_normal && detail::grid_search(dd, g, {true, true})) {
      return {true, ThreeByThreeWitness{{g.top, g.row2, g.row3, g.bottom}, g.col2, g.col3, true}};
    }
    if (detail::grid_search(dd, g, {true, false})) {
      return {true, ThreeByThreeWitness{{g.top, g.row2, g.row3, g.bottom}, g.col2, g.col3, false}};
    }
    return {};
  }

  /// Only the normal-rows search, for the strengthening property.
  inline std::optional<ThreeByThreeWitness> equal_by_3x3_normal(DenominatorData const& dd,
                                                                ThreeArrow const&      t1,
                                                                ThreeArrow const&      t2) {
    auto const& c = dd.base();
    if (!is_normal(dd, t1) || !is_normal(dd, t2) || !parallel(c, t1, t2)) {
      throw DomainError("equal_by_3x3_normal: inputs must be parallel normal 3-arrows");
    }
    Grid g{t1, {}, {}, t2, identity_arrow(c, source(c, t1)), {}, {},
           identity_arrow(c, target(c, t1))};
    if (!detail::grid_search(dd, g, {true, true})) {
      return std::nullopt;
    }
    return ThreeByThreeWitness{{g.top, g.row2, g.row3, g.bottom}, g.col2, g.col3, true};
  }

  ////////////////////////////////////////////////////////////////////////
  // Mixed composites
  ////////////////////////////////////////////////////////////////////////

  /// Grid for t1 normal2 = normal1 t2 with outer verticals normal1 (left)
  /// and normal2 (right) and arbitrary inner middles g~1, g~2.
  struct SquareWitness {
    ThreeArrow t1, row2, row3, t2;
    ThreeArrow normal1, inner1, inner2, normal2;
  };

  inline Grid as_grid(SquareWitness const& w) {
    return {w.t1, w.row2, w.row3, w.t2, w.normal1, w.inner1, w.inner2, w.normal2};
  }

  inline std::vector<std::string> validate_witness(DenominatorData const& dd, SquareWitness const& w) {
    return grid_violations(dd, as_grid(w), {false, false});
  }

  struct MixedResult {
    bool                         equal = false;
    std::optional<SquareWitness> witness;
  };

  namespace detail {
    inline void require_mixed_shape(DenominatorData const& dd, ThreeArrow const& t1,
                                    ThreeArrow const& n2, ThreeArrow const& n1,
                                    ThreeArrow const& t2) {
      auto const& c = dd.base();
      if (!is_three_arrow(dd, t1) || !is_three_arrow(dd, t2)) {
        throw DomainError("mixed composite: t1, t2 must be 3-arrows");
      }
      if (!is_normal(dd, n1) || !is_normal(dd, n2)) {
        throw DomainError("mixed composite: the vertical 3-arrows must be normal");
      }
      if (source(c, t1) != source(c, n1) || target(c, t1) != source(c, n2)
          || target(c, n1) != source(c, t2) || target(c, n2) != target(c, t2)) {
        throw DomainError("mixed composite: arrows do not form a square");
      }
    }

    inline std::optional<SquareWitness> square_search(DenominatorData const& dd, ThreeArrow const& t1,
                                                      ThreeArrow const& n2, ThreeArrow const& n1,
                                                      ThreeArrow const& t2) {
      Grid g{t1, {}, {}, t2, n1, {}, {}, n2};
      if (!grid_search(dd, g, {false, false})) {
        return std::nullopt;
      }
      return SquareWitness{t1, g.row2, g.row3, t2, n1, g.col2, g.col3, n2};
    }
  }  // namespace detail

  /// Decides [t1][normal2] = [normal1][t2] by search and asserts agreement
  /// with composition in the fraction category.
  inline MixedResult mixed_composite_equal(FractionCategory const& fc, ThreeArrow const& t1,
                                           ThreeArrow const& normal2, ThreeArrow const& normal1,
                                           ThreeArrow const& t2) {
    auto const& dd = fc.data();
    detail::require_mixed_shape(dd, t1, normal2, normal1, t2);
    auto w     = detail::square_search(dd, t1, normal2, normal1, t2);
    bool by_fc = fc.compose(fc.cls(t1), fc.cls(normal2)) == fc.compose(fc.cls(normal1), fc.cls(t2));
    if (by_fc != w.has_value()) {
      throw InvariantError("square search disagrees with fraction composition");
    }
    return {w.has_value(), w};
  }

  ////////////////////////////////////////////////////////////////////////
  // Flipping
  ////////////////////////////////////////////////////////////////////////

  /// Rows top = (b1,f1,a1), upper = (v1,h1,u1), lower = (v2,h2,u2),
  /// bottom = (b2,f2,a2). Downward verticals g2'', g2', g2 between top and
  /// upper (leftmost column an identity), upward p1, d, e, i2 from lower to
  /// upper, downward g1, g1', g1'' between lower and bottom (rightmost
  /// column an identity).
  struct FlipHypothesis {
    ThreeArrow top, upper, lower, bottom;
    MorId      g2pp, g2p, g2;
    MorId      p1, d, e, i2;
    MorId      g1, g1p, g1pp;
  };

  inline std::vector<std::string> hypothesis_violations(DenominatorData const& dd,
                                                        FlipHypothesis const&  h) {
    auto const&              c = dd.base();
    std::vector<std::string> out;
    for (auto const* row : {&h.top, &h.upper, &h.lower, &h.bottom}) {
      if (!is_three_arrow(dd, *row)) {
        out.emplace_back("row is not a 3-arrow");
        return out;
      }
    }
    if (!dd.in_T(h.p1)) out.emplace_back("p1 in T");
    if (!dd.in_S(h.i2)) out.emplace_back("i2 in S");
    if (!dd.in_D(h.d)) out.emplace_back("d in D");
    if (!dd.in_D(h.e)) out.emplace_back("e in D");
    auto eq = [&](char const* name, std::optional<MorId> l, std::optional<MorId> r) {
      if (!l || !r || *l != *r) {
        out.emplace_back(name);
      }
    };
    auto cmp = [&](MorId x, MorId y) { return c.try_compose(x, y); };
    eq("b1 = g2'' v1", h.top.b, cmp(h.g2pp, h.upper.b));
    eq("f1 g2' = g2'' h1", cmp(h.top.f, h.g2p), cmp(h.g2pp, h.upper.f));
    eq("a1 g2' = g2 u1", cmp(h.top.a, h.g2p), cmp(h.g2, h.upper.a));
    eq("v2 p1 = d v1", cmp(h.lower.b, h.p1), cmp(h.d, h.upper.b));
    eq("h2 e = d h1", cmp(h.lower.f, h.e), cmp(h.d, h.upper.f));
    eq("u2 e = i2 u1", cmp(h.lower.a, h.e), cmp(h.i2, h.upper.a));
    eq("v2 g1 = g1' b2", cmp(h.lower.b, h.g1), cmp(h.g1p, h.bottom.b));
    eq("h2 g1'' = g1' f2", cmp(h.lower.f, h.g1pp), cmp(h.g1p, h.bottom.f));
    eq("u2 g1'' = a2", cmp(h.lower.a, h.g1pp), h.bottom.a);
    return out;
  }

  /// Outer verticals of the conclusion: (p1, g1, 1) on the left and
  /// (1, g2, i2) on the right.
  inline std::pair<ThreeArrow, ThreeArrow> flip_outer_columns(FinCategory const&    c,
                                                              FlipHypothesis const& h) {
    ThreeArrow left{h.p1, h.g1, c.identity(c.tgt(h.g1))};
    ThreeArrow right{c.identity(c.src(h.g2)), h.g2, h.i2};
    return {left, right};
  }

  inline SquareWitness flip(DenominatorData const& dd, FlipHypothesis const& h) {
    auto bad = hypothesis_violations(dd, h);
    if (!bad.empty()) {
      throw DomainError("flip hypothesis fails: " + bad.front());
    }
    auto [left, right] = flip_outer_columns(dd.base(), h);
    detail::require_mixed_shape(dd, h.top, right, left, h.bottom);
    auto w = detail::square_search(dd, h.top, right, left, h.bottom);
    if (!w) {
      throw InvariantError("no flipped square exists; the axioms must have failed");
    }
    return *w;
  }

}  // namespace locfrac
