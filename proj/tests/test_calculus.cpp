#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace locfrac;
using oracle::mor;

namespace {

  struct Square {
    MorId d, e, f, g;
  };

  // Commuting squares f e = d g with d, e in D.
  std::vector<Square> squares(DenominatorData const& dd) {
    auto const&         c = dd.base();
    std::vector<Square> out;
    for (auto d : dd.members(Which::D)) {
      for (auto e : dd.members(Which::D)) {
        for (auto f : c.morphisms()) {
          if (c.src(f) != c.src(d) || c.tgt(f) != c.src(e)) {
            continue;
          }
          for (auto g : c.morphisms()) {
            if (c.src(g) == c.tgt(d) && c.tgt(g) == c.tgt(e) && c.compose(f, e) == c.compose(d, g)) {
              out.push_back({d, e, f, g});
            }
          }
        }
      }
    }
    return out;
  }

  // (s, t) with s in S, t in T and s t = x.
  std::vector<std::pair<MorId, MorId>> splits(DenominatorData const& dd, MorId x) {
    auto const&                          c = dd.base();
    std::vector<std::pair<MorId, MorId>> out;
    for (auto s : dd.members(Which::S)) {
      for (auto t : dd.members(Which::T)) {
        if (c.composable(s, t) && c.compose(s, t) == x) {
          out.emplace_back(s, t);
        }
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("factorisation square on CH3", "[calculus]") {
  auto        inst = make_named("CH3");
  auto const& c    = inst.base();
  auto        m01  = mor(c, "m_0_1");
  auto        i1   = mor(c, "i_1");
  auto        sq   = factorisation_square(inst.dd, m01, i1, m01, i1);
  CHECK(sq.i == m01);
  CHECK(sq.p == i1);
  CHECK(sq.j == i1);
  CHECK(sq.q == i1);
  CHECK(sq.h == i1);

  auto given = factorisation_square(inst.dd, m01, i1, m01, i1, Given::left,
                                    std::pair{mor(c, "i_0"), m01});
  CHECK(given.i == mor(c, "i_0"));
  CHECK(given.p == m01);
  CHECK(given.h == m01);

  CHECK_THROWS_AS(factorisation_square(inst.dd, m01, i1, m01, i1, Given::left), DomainError);
  CHECK_THROWS_AS(factorisation_square(inst.dd, m01, i1, m01, i1, Given::left, std::pair{m01, m01}),
                  DomainError);
  CHECK_THROWS_AS(factorisation_square(inst.dd, mor(c, "m_1_2"), i1, m01, i1), DomainError);
}

TEST_CASE("factorisation squares exist on every commuting square", "[calculus]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto const& dd   = inst.dd;
    for (auto const& s : squares(dd)) {
      auto w = factorisation_square(dd, s.d, s.e, s.f, s.g);
      CHECK(dd.in_S(w.i));
      CHECK(dd.in_T(w.p));
      CHECK(dd.in_S(w.j));
      CHECK(dd.in_T(w.q));
      CHECK(c.compose(w.i, w.p) == s.d);
      CHECK(c.compose(w.j, w.q) == s.e);
      CHECK(c.compose(s.f, w.j) == c.compose(w.i, w.h));
      CHECK(c.compose(w.p, s.g) == c.compose(w.h, w.q));
    }
  }
}

TEST_CASE("both refinement lemmas on every square and factorisation", "[calculus]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto const& dd   = inst.dd;
    std::size_t seen = 0;
    for (auto const& s : squares(dd)) {
      for (auto [i, p] : splits(dd, s.d)) {
        for (auto [j, q] : splits(dd, s.e)) {
          ++seen;
          auto rs = factorisation_lemma_s(dd, s.d, s.e, s.f, s.g, i, p, j, q);
          CHECK(dd.in_S(rs.k));
          CHECK(dd.in_T(rs.q_tilde));
          CHECK(rs.j_tilde == c.compose(j, rs.k));
          CHECK(q == c.compose(rs.k, rs.q_tilde));
          CHECK(c.compose(s.f, rs.j_tilde) == c.compose(i, rs.h));
          CHECK(c.compose(p, s.g) == c.compose(rs.h, rs.q_tilde));

          auto rt = factorisation_lemma_t(dd, s.d, s.e, s.f, s.g, i, p, j, q);
          CHECK(dd.in_S(rt.i_tilde));
          CHECK(dd.in_T(rt.r));
          CHECK(i == c.compose(rt.i_tilde, rt.r));
          CHECK(rt.p_tilde == c.compose(rt.r, p));
          CHECK(c.compose(s.f, j) == c.compose(rt.i_tilde, rt.h));
          CHECK(c.compose(rt.p_tilde, s.g) == c.compose(rt.h, q));
        }
      }
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("3x3 equality agrees with the search oracle", "[calculus][3x3]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto        orc  = oracle::fraction_classes(inst.dd);
    auto        ts   = enumerate_three_arrows(inst.dd);
    std::size_t equal = 0, unequal = 0;
    for (auto const& t1 : ts) {
      for (auto const& t2 : ts) {
        if (!parallel(c, t1, t2)) {
          continue;
        }
        auto r = equal_by_3x3(inst.dd, t1, t2);
        CHECK(r.equal == orc.equal(t1, t2));
        CHECK(r.equal == r.witness.has_value());
        if (r.witness) {
          ++equal;
          CHECK(validate_witness(inst.dd, *r.witness).empty());
          CHECK(r.witness->rows[0] == t1);
          CHECK(r.witness->rows[3] == t2);
        } else {
          ++unequal;
        }
      }
    }
    CHECK(equal > 0);
    if (name == "PAR" || name == "F2") {
      CHECK(unequal > 0);
    }
  }
}

TEST_CASE("normal inputs get witnesses with normal rows", "[calculus][3x3]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto        orc  = oracle::fraction_classes(inst.dd);
    auto        ts   = enumerate_three_arrows(inst.dd);
    for (auto const& t1 : ts) {
      for (auto const& t2 : ts) {
        if (!is_normal(inst.dd, t1) || !is_normal(inst.dd, t2) || !parallel(c, t1, t2)) {
          continue;
        }
        auto w = equal_by_3x3_normal(inst.dd, t1, t2);
        CHECK(w.has_value() == orc.equal(t1, t2));
        if (w) {
          CHECK(w->normal_rows);
          CHECK(validate_witness(inst.dd, *w).empty());
        }
      }
    }
  }
}

TEST_CASE("a tampered witness is rejected", "[calculus][3x3]") {
  auto        inst = make_named("CH3");
  auto        t    = parse_three_arrow(inst.dd, "i_0,m_0_1,i_1");
  auto        u    = parse_three_arrow(inst.dd, "i_0,m_0_2,i_2");
  auto        r    = equal_by_3x3(inst.dd, t, t);
  REQUIRE(r.witness);
  auto w    = *r.witness;
  w.rows[3] = u;
  CHECK_FALSE(validate_witness(inst.dd, w).empty());
  w         = *r.witness;
  w.rows[1] = parse_three_arrow(inst.dd, "i_0,i_0,i_0");
  CHECK_FALSE(validate_witness(inst.dd, w).empty());
  CHECK_THROWS_AS(equal_by_3x3(inst.dd, t, parse_three_arrow(inst.dd, "i_0,i_0,i_0")), DomainError);
}

TEST_CASE("mixed composite squares agree with composition", "[calculus][mixed]") {
  for (std::string name : {"WALK", "CH3", "CH3-B", "PAR", "Z4", "DIA-B", "F2"}) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto        fc   = build_fraction_category(inst.dd);
    auto        ts   = enumerate_three_arrows(inst.dd);
    std::vector<ThreeArrow> ns;
    for (auto const& t : ts) {
      if (is_normal(inst.dd, t)) {
        ns.push_back(t);
      }
    }
    std::size_t yes = 0, no = 0;
    for (auto const& t1 : ts) {
      for (auto const& n2 : ns) {
        if (source(c, n2) != target(c, t1)) {
          continue;
        }
        for (auto const& n1 : ns) {
          if (source(c, n1) != source(c, t1)) {
            continue;
          }
          for (auto const& t2 : ts) {
            if (source(c, t2) != target(c, n1) || target(c, t2) != target(c, n2)) {
              continue;
            }
            auto r = mixed_composite_equal(*fc, t1, n2, n1, t2);
            if (r.witness) {
              ++yes;
              CHECK(validate_witness(inst.dd, *r.witness).empty());
            } else {
              ++no;
            }
          }
        }
      }
    }
    CHECK(yes > 0);
    // Poset and groupoid cases are thin, so every square commutes.
    if (name == "PAR" || name == "F2") {
      CHECK(no > 0);
    }
  }
}

TEST_CASE("mixed composite shape errors", "[calculus][mixed]") {
  auto inst = make_named("CH3-B");
  auto fc   = build_fraction_category(inst.dd);
  auto t    = parse_three_arrow(inst.dd, "i_0,m_0_1,i_1");
  auto one0 = parse_three_arrow(inst.dd, "i_0,i_0,i_0");
  auto one1 = parse_three_arrow(inst.dd, "i_1,i_1,i_1");
  CHECK(mixed_composite_equal(*fc, t, one1, one0, t).equal);
  CHECK_THROWS_AS(mixed_composite_equal(*fc, t, one0, one0, t), DomainError);
  // (m_0_1, m_0_1, i_1) has its left leg outside T = identities.
  auto bad = parse_three_arrow(inst.dd, "m_0_1,m_0_1,i_1");
  CHECK_THROWS_AS(mixed_composite_equal(*fc, t, one1, bad, t), DomainError);
}

TEST_CASE("flipping the trivial configuration", "[calculus][flip]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    for (auto const& t : enumerate_three_arrows(inst.dd)) {
      auto const     x = c.identity(c.src(t.b)), y = c.identity(c.tgt(t.b));
      auto const     z = c.identity(c.tgt(t.f)), w = c.identity(c.src(t.a));
      FlipHypothesis h{t, t, t, t, x, z, w, y, x, z, w, y, x, z};
      REQUIRE(hypothesis_violations(inst.dd, h).empty());
      auto sq = flip(inst.dd, h);
      CHECK(validate_witness(inst.dd, sq).empty());
      CHECK(sq.t1 == t);
      CHECK(sq.t2 == t);
      auto [left, right] = flip_outer_columns(c, h);
      CHECK(sq.normal1 == left);
      CHECK(sq.normal2 == right);
    }
  }
}

TEST_CASE("a broken flip hypothesis is a domain error", "[calculus][flip]") {
  auto        inst = make_named("CH3-B");
  auto const& c    = inst.base();
  auto        t    = parse_three_arrow(inst.dd, "i_0,m_0_1,i_1");
  auto        i0 = mor(c, "i_0"), i1 = mor(c, "i_1");
  FlipHypothesis h{t, t, t, t, i0, i1, i1, i0, i0, i1, i1, i0, i0, i1};
  REQUIRE(hypothesis_violations(inst.dd, h).empty());
  h.p1 = mor(c, "m_0_1");
  CHECK_FALSE(hypothesis_violations(inst.dd, h).empty());
  CHECK_THROWS_AS(flip(inst.dd, h), DomainError);
}
