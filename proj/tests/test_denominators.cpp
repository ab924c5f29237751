#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace locfrac;
using oracle::mor;

namespace {

  DenominatorData with_d(Instance const& inst, std::vector<std::string> const& d) {
    return DenominatorData::from_ids(inst.dd.base_ptr(), d, d, d);
  }

  // Plain-loop weak pushout test, written from the definition.
  bool weak_pushout_by_definition(FinCategory const& c, MorId i, MorId f, MorId f2, MorId i2) {
    for (auto u : c.morphisms()) {
      for (auto v : c.morphisms()) {
        if (c.src(u) != c.tgt(i) || c.src(v) != c.tgt(f) || c.tgt(u) != c.tgt(v)) {
          continue;
        }
        if (c.compose(i, u) != c.compose(f, v)) {
          continue;
        }
        bool found = false;
        for (auto w : c.morphisms()) {
          if (c.src(w) == c.tgt(f2) && c.tgt(w) == c.tgt(u) && c.compose(f2, w) == u && c.compose(i2, w) == v) {
            found = true;
          }
        }
        if (!found) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace

TEST_CASE("multiplicative subsets", "[denominators]") {
  auto ch3 = make_named("CH3");
  CHECK(is_multiplicative(ch3.dd, Which::D));
  auto empty = with_d(ch3, {});
  auto r     = is_multiplicative(empty, Which::D);
  REQUIRE_FALSE(r);
  CHECK(r.counterexample->missing_identity.has_value());
  auto walk = make_named("WALK");
  CHECK(is_multiplicative(walk.dd, Which::D));
  auto open = with_d(ch3, {"i_0", "i_1", "i_2", "m_0_1", "m_1_2"});
  auto o    = is_multiplicative(open, Which::D);
  REQUIRE_FALSE(o);
  CHECK_FALSE(o.counterexample->missing_identity.has_value());
  CHECK(o.counterexample->first == mor(ch3.base(), "m_0_1"));
  CHECK(o.counterexample->second == mor(ch3.base(), "m_1_2"));
}

TEST_CASE("two of three", "[denominators]") {
  auto ch3 = make_named("CH3");
  CHECK(is_two_of_three(ch3.dd));
  CHECK(is_two_of_three(make_named("DIA").dd));
  auto bad = with_d(ch3, {"i_0", "i_1", "i_2", "m_0_1", "m_1_2"});
  auto r   = is_two_of_three(bad);
  REQUIRE_FALSE(r);
  auto const& c = ch3.base();
  CHECK(*r.counterexample == std::array{mor(c, "m_0_1"), mor(c, "m_1_2"), mor(c, "m_0_2")});
}

TEST_CASE("two of six", "[denominators]") {
  auto ch3 = make_named("CH3");
  CHECK(is_two_of_six(ch3.dd));
  CHECK_FALSE(oracle::two_of_six_counterexample(ch3.dd).has_value());
  auto all = with_d(ch3, {"i_0", "i_1", "i_2", "m_0_1", "m_0_2", "m_1_2"});
  CHECK(is_two_of_six(all));
}

TEST_CASE("two of six on Z/4 with only the unit", "[denominators]") {
  // 3 * 3 = 1 in Z/4, so (3, 3, 3) has fg = gh = 1 in D while 3 is not.
  auto z4 = make_named("Z4");
  auto dd = with_d(z4, {"1"});
  auto o  = oracle::two_of_six_counterexample(dd);
  REQUIRE(o.has_value());
  auto const& c = z4.base();
  auto three    = mor(c, "3");
  CHECK(*o == std::array{three, three, three});
  auto r = is_two_of_six(dd);
  REQUIRE_FALSE(r);
  CHECK(*r.counterexample == *o);
}

TEST_CASE("predicates agree with brute force on every instance and subset", "[denominators]") {
  for (auto const& name : {"WALK", "CH3", "PAR", "Z4", "IDEM"}) {
    auto              inst = make_named(name);
    auto const&       c    = inst.base();
    std::size_t const n    = c.morphism_count();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::string> ids;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask >> k & 1) {
          ids.push_back(c.name(mor_id(k)));
        }
      }
      auto dd = with_d(inst, ids);
      CHECK(is_two_of_six(dd).holds == !oracle::two_of_six_counterexample(dd).has_value());
      bool three = true, cat = true;
      for (auto x : c.objects()) {
        cat = cat && dd.in_D(c.identity(x));
      }
      for (auto f : c.morphisms()) {
        for (auto g : c.morphisms()) {
          if (c.tgt(f) != c.src(g)) {
            continue;
          }
          int const in = dd.in_D(f) + dd.in_D(g) + dd.in_D(c.compose(f, g));
          three        = three && in != 2;
          cat          = cat && !(dd.in_D(f) && dd.in_D(g) && !dd.in_D(c.compose(f, g)));
        }
      }
      CHECK(is_two_of_three(dd).holds == three);
      CHECK(is_multiplicative(dd, Which::D).holds == cat);
      auto level = classify_saturation(dd);
      CHECK((level >= Saturation::multiplicative) == cat);
      if (level == Saturation::weakly_saturated) {
        CHECK(is_two_of_three(dd));
      }
    }
  }
}

TEST_CASE("saturation ladder", "[denominators]") {
  CHECK(classify_saturation(make_named("CH3").dd) == Saturation::weakly_saturated);
  CHECK(classify_saturation(make_named("PLANT-2OF3").dd) == Saturation::multiplicative);
  auto ch3 = make_named("CH3");
  CHECK(classify_saturation(with_d(ch3, {"i_0", "i_1"})) == Saturation::none);
  CHECK(std::string(to_string(Saturation::weakly_saturated)) == "weakly-saturated");
}

TEST_CASE("weak pushouts", "[denominators]") {
  auto dia      = make_named("DIA");
  auto const& c = dia.base();
  CHECK(is_weak_pushout(c, mor(c, "i_bot"), mor(c, "m_bot_a"), mor(c, "m_bot_a"), mor(c, "i_a")));
  CHECK(is_weak_pushout(c, mor(c, "m_bot_a"), mor(c, "m_bot_b"), mor(c, "m_a_top"), mor(c, "m_b_top")));
  CHECK_THROWS_AS(is_weak_pushout(c, mor(c, "m_bot_a"), mor(c, "m_bot_b"), mor(c, "i_a"), mor(c, "i_b")),
                  DomainError);

  auto idem      = make_named("IDEM");
  auto const& ic = idem.base();
  auto e         = mor(ic, "e");
  CHECK_FALSE(is_weak_pushout(ic, e, e, e, e));
  CHECK_FALSE(is_weak_pullback(ic, e, e, e, e));
}

TEST_CASE("weak universality agrees with the definition", "[denominators]") {
  for (auto const& name : {"WALK", "CH3", "DIA", "IDEM", "Z4", "PAR"}) {
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    for (auto i : c.morphisms()) {
      for (auto f : c.morphisms()) {
        if (c.src(i) != c.src(f)) {
          continue;
        }
        for (auto f2 : c.morphisms()) {
          for (auto i2 : c.morphisms()) {
            if (!c.composable(i, f2) || !c.composable(f, i2) || c.tgt(f2) != c.tgt(i2)
                || c.compose(i, f2) != c.compose(f, i2)) {
              continue;
            }
            CHECK(is_weak_pushout(c, i, f, f2, i2) == weak_pushout_by_definition(c, i, f, f2, i2));
          }
        }
      }
    }
  }
}

TEST_CASE("check_WU", "[denominators]") {
  CHECK(check_WU(make_named("WALK").dd));
  CHECK(check_WU(make_named("PAR").dd));
  auto idem = make_named("IDEM");
  auto r    = check_WU(idem.dd);
  REQUIRE_FALSE(r);
  auto e = mor(idem.base(), "e");
  REQUIRE_FALSE(r.pushout_failures.empty());
  CHECK(r.pushout_failures.front() == std::pair{e, e});
  CHECK_FALSE(check_WU(make_named("PAR-F").dd));
}

TEST_CASE("cached Ore witnesses revalidate", "[denominators]") {
  for (auto const& name : positive_instances()) {
    auto        inst = make_named(name);
    auto const& c    = inst.base();
    auto        r    = check_WU(inst.dd);
    REQUIRE(r);
    for (auto const& w : r.cache.pushout) {
      if (w) {
        CHECK(inst.dd.in_S(w->den_prime));
        CHECK(c.compose(w->den, w->f_prime) == c.compose(w->f, w->den_prime));
        CHECK(is_weak_pushout(c, w->den, w->f, w->f_prime, w->den_prime));
      }
    }
    for (auto const& w : r.cache.pullback) {
      if (w) {
        CHECK(inst.dd.in_T(w->den_prime));
        CHECK(c.compose(w->den_prime, w->f) == c.compose(w->f_prime, w->den));
        CHECK(is_weak_pullback(c, w->den, w->f, w->den_prime, w->f_prime));
      }
    }
  }
}

TEST_CASE("check_Fac", "[denominators]") {
  auto ch3      = make_named("CH3");
  auto const& c = ch3.base();
  auto r        = check_Fac(ch3.dd);
  REQUIRE(r);
  auto const& w = r.cache[index(mor(c, "m_0_1"))];
  REQUIRE(w);
  CHECK(w->i == mor(c, "m_0_1"));
  CHECK(w->p == mor(c, "i_1"));
  CHECK_FALSE(check_Fac(make_named("PLANT-FAC").dd));
  for (auto const& name : positive_instances()) {
    auto inst = make_named(name);
    auto fac  = check_Fac(inst.dd);
    REQUIRE(fac);
    for (auto d : inst.dd.members(Which::D)) {
      auto const& x = fac.cache[index(d)];
      REQUIRE(x);
      CHECK(inst.dd.in_S(x->i));
      CHECK(inst.dd.in_T(x->p));
      CHECK(inst.base().compose(x->i, x->p) == d);
    }
  }
}

TEST_CASE("axiom suite on the named instances", "[denominators]") {
  for (auto const& name : {"WALK", "CH3", "DIA", "DIA-B", "PAR", "Z4"}) {
    INFO(name);
    CHECK(is_uni_fractionable(make_named(name).dd).ok());
  }
  auto idem = is_uni_fractionable(make_named("IDEM").dd);
  CHECK(idem.failed() == std::vector<std::string>{"(WU)"});
  CHECK(idem.find("(WU)")->witness == std::vector<std::string>{"i=e", "f=e"});
  CHECK(is_uni_fractionable(make_named("PLANT-2OF3").dd).failed() == std::vector<std::string>{"D (2 of 3)"});
  CHECK(is_uni_fractionable(make_named("PLANT-FAC").dd).failed() == std::vector<std::string>{"(Fac)"});
  CHECK(is_uni_fractionable(make_named("PAR-F").dd).failed() == std::vector<std::string>{"(WU)"});
  CHECK_THROWS_AS(UniFractionable::make(make_named("IDEM").dd), AxiomError);
}

TEST_CASE("axioms are invariant under relabelling", "[denominators]") {
  auto inst = make_named("DIA-B");
  auto data = inst.base().to_data();
  // Reverse the morphism order and prefix every id.
  std::reverse(data.morphisms.begin(), data.morphisms.end());
  auto rename = [](std::string const& s) { return "r" + s; };
  for (auto& m : data.morphisms) {
    m.id = rename(m.id);
  }
  for (auto& [x, f] : data.identities) {
    f = rename(f);
  }
  for (auto& t : data.composition) {
    for (auto& s : t) {
      s = rename(s);
    }
  }
  auto c = std::make_shared<FinCategory const>(FinCategory::from_data(data));
  auto names = [&](Which w) {
    std::vector<std::string> out;
    for (auto f : inst.dd.members(w)) {
      out.push_back(rename(inst.base().name(f)));
    }
    return out;
  };
  auto dd = DenominatorData::from_ids(c, names(Which::D), names(Which::S), names(Which::T));
  CHECK(is_uni_fractionable(dd).ok());
  CHECK(build_fraction_category(dd)->class_count() == build_fraction_category(inst.dd)->class_count());
}

TEST_CASE("morphisms of uni-fractionable categories", "[denominators]") {
  auto ch3 = make_named("CH3");
  auto c   = ch3.dd.base_ptr();
  CHECK(validate_uf_morphism(identity_functor(c), ch3.dd, ch3.dd));

  auto sub = full_subcategory(ch3.dd, {oracle::obj(*c, "0"), oracle::obj(*c, "1")});
  CHECK(validate_uf_morphism(sub.inclusion, sub.data, ch3.dd));

  // 0 -> 1, 1 -> 2, 2 -> 2 sends 0<=1 to 1<=2, which is not in D.
  FunctorTable shift{c, c, {}, {}};
  shift.obj_map = {oracle::obj(*c, "1"), oracle::obj(*c, "2"), oracle::obj(*c, "2")};
  shift.mor_map = {mor(*c, "i_1"), mor(*c, "i_2"), mor(*c, "i_2"), mor(*c, "m_1_2"), mor(*c, "m_1_2"), mor(*c, "i_2")};
  REQUIRE(validate_functor(shift).ok());
  auto r = validate_uf_morphism(shift, ch3.dd, ch3.dd);
  REQUIRE_FALSE(r);
  CHECK(r.counterexample->second == mor(*c, "m_0_1"));
}
