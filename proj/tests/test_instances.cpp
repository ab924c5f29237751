#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace locfrac;
using oracle::mor;
using oracle::obj;

TEST_CASE("every named instance is a valid category", "[instances]") {
  for (auto const& name : named_instances()) {
    INFO(name);
    auto inst = make_named(name);
    CHECK(inst.name == name);
    CHECK(validate_category(inst.base()).ok());
  }
  CHECK_THROWS_AS(make_named("NOPE"), DomainError);
}

TEST_CASE("axiom outcomes of the named instances", "[instances]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    CHECK(axiom_suite(make_named(name)).ok());
  }
  auto failed = [](std::string const& name) {
    std::vector<std::string> out;
    for (auto const& i : axiom_suite(make_named(name)).items) {
      if (!i.passed) {
        out.push_back(i.name);
      }
    }
    return out;
  };
  CHECK(failed("IDEM") == std::vector<std::string>{"(WU)"});
  CHECK(failed("PLANT-FAC") == std::vector<std::string>{"(Fac)"});
  CHECK(failed("PAR-F") == std::vector<std::string>{"(WU)"});
  CHECK(failed("PLANT-2OF3").size() == 1);
}

TEST_CASE("poset construction", "[instances]") {
  auto ch = chain(4, Selector::identities());
  CHECK(ch.base().object_count() == 4);
  CHECK(ch.base().morphism_count() == 10);
  auto const& c = ch.base();
  CHECK(c.compose(mor(c, "m_0_1"), mor(c, "m_1_3")) == mor(c, "m_0_3"));
  CHECK(ch.dd.members(Which::D).size() == 4);

  auto anti = antichain(3, Selector::all());
  CHECK(anti.base().morphism_count() == 3);
  CHECK(is_uni_fractionable(anti.dd).ok());
  CHECK(build_fraction_category(anti.dd)->class_count() == 3);

  auto dia = diamond(Selector::all());
  CHECK(dia.base().morphism_count() == 9);
}

TEST_CASE("poset errors", "[instances]") {
  std::vector<std::string> xs{"x", "y"};
  CHECK_THROWS_AS(make_poset("p", xs, {{"x", "x"}}, Selector::all()), DomainError);
  CHECK_THROWS_AS(make_poset("p", xs, {{"x", "x"}, {"y", "y"}, {"x", "y"}, {"y", "x"}}, Selector::all()),
                  DomainError);
  CHECK_THROWS_AS(make_poset("p", {"x", "x"}, {{"x", "x"}}, Selector::all()), DomainError);
  CHECK_THROWS_AS(make_poset("p", xs, {{"x", "x"}, {"y", "y"}, {"x", "z"}}, Selector::all()), DomainError);
  std::vector<std::string> xyz{"x", "y", "z"};
  CHECK_THROWS_AS(make_poset("p", xyz, {{"x", "x"}, {"y", "y"}, {"z", "z"}, {"x", "y"}, {"y", "z"}},
                             Selector::all()),
                  DomainError);
  CHECK_THROWS(make_poset("p", xs, {{"x", "x"}, {"y", "y"}}, Selector::listed({"nope"})));
}

TEST_CASE("monoid construction", "[instances]") {
  auto triv = make_monoid("T", {"1"}, {{0}}, 0, Selector::all());
  CHECK(triv.base().morphism_count() == 1);
  CHECK(build_fraction_category(triv.dd)->class_count() == 1);

  auto z4 = make_named("Z4");
  auto const& c = z4.base();
  CHECK(c.compose(mor(c, "2"), mor(c, "3")) == mor(c, "2"));
  CHECK(c.compose(mor(c, "3"), mor(c, "3")) == mor(c, "1"));

  CHECK_THROWS_AS(make_monoid("M", {"1", "e"}, {{0, 1}}, 0, Selector::all()), DomainError);
  CHECK_THROWS_AS(make_monoid("M", {"1", "e"}, {{0, 1}, {1, 2}}, 0, Selector::all()), DomainError);
  CHECK_THROWS_AS(make_monoid("M", {"1", "e"}, {{0, 1}, {0, 1}}, 0, Selector::all()), DomainError);
  // (e e) f = f but e (e f) = 1.
  CHECK_THROWS_AS(make_monoid("M", {"1", "e", "f"}, {{0, 1, 2}, {1, 0, 1}, {2, 2, 2}}, 0, Selector::all()),
                  DomainError);
}

TEST_CASE("selectors", "[instances]") {
  auto        inst = make_named("CH3");
  auto const& c    = inst.base();
  CHECK(Selector::all().select(c).size() == 6);
  CHECK(Selector::identities().select(c) == std::vector<std::string>{"i_0", "i_1", "i_2"});
  CHECK(Selector::listed({"m_0_1"}).select(c) == std::vector<std::string>{"m_0_1"});
  auto d = chain(3, Selector::listed({"m_0_1"}));
  CHECK_FALSE(d.dd.in_D(mor(d.base(), "i_0")));
}

TEST_CASE("instance documents round-trip byte for byte", "[instances][io]") {
  for (auto const& name : named_instances()) {
    INFO(name);
    auto const text = write_instance(make_named(name));
    auto const back = parse_instance(text);
    CHECK(write_instance(back) == text);
    CHECK(write_instance(make_named(name)) == text);
    CHECK(back.coproducts.has_value() == make_named(name).coproducts.has_value());
    CHECK(back.addition.has_value() == make_named(name).addition.has_value());
  }
}

TEST_CASE("document layout", "[instances][io]") {
  auto text = write_instance(make_named("WALK"));
  CHECK(text.back() == '\n');
  CHECK(text.find("    {\"id\":\"f\",\"src\":\"X\",\"tgt\":\"Y\"}") != std::string::npos);
  CHECK(text.find("\"denominators\": [\"1_X\",\"1_Y\",\"f\"]") != std::string::npos);
  auto doc = Json::parse(text);
  CHECK(doc["name"] == "WALK");
  CHECK(doc["identities"]["X"] == "1_X");
}

TEST_CASE("load errors carry a location", "[instances][io]") {
  auto doc = instance_json(make_named("WALK"));
  auto expect = [](Json const& d, std::string const& where) {
    try {
      parse_instance(d.dump());
      FAIL("expected a load error");
    } catch (LoadError const& e) {
      CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring(where));
    }
  };
  auto d = doc;
  d["morphisms"][2]["src"] = 7;
  expect(d, "morphisms[2].src");
  d = doc;
  d.erase("composition");
  expect(d, "composition");
  d = doc;
  d["composition"][0] = Json::array({"1_X", "1_X"});
  expect(d, "composition[0]");
  d = doc;
  d["denominators"] = Json::array({"zz"});
  expect(d, "zz");
  CHECK_THROWS_AS(parse_instance("{ not json"), LoadError);
  CHECK_THROWS_AS(load_instance("/nonexistent/file.json"), LoadError);
}

TEST_CASE("localisation document reloads as a valid instance", "[instances][io]") {
  for (auto const& name : positive_instances()) {
    INFO(name);
    auto inst = make_named(name);
    auto fc   = build_fraction_category(inst.dd);
    auto text = write_localisation(*fc);
    auto back = parse_instance(text);
    CHECK(back.name == "fractions");
    CHECK(validate_category(back.base()).ok());
    CHECK(back.base().morphism_count() == fc->class_count());
    CHECK(back.dd.members(Which::D).size() == classify_isomorphisms(*fc).size());
    auto doc = Json::parse(text);
    CHECK(doc["classes"].size() == fc->class_count());
    CHECK(doc["localisation"].size() == inst.base().morphism_count());
  }
}

TEST_CASE("localisation output ignores name, S and T", "[instances][io]") {
  auto a = build_fraction_category(make_named("DIA").dd);
  auto b = build_fraction_category(make_named("DIA-B").dd);
  CHECK(write_localisation(*a) == write_localisation(*b));
  auto dot = to_dot(*a);
  CHECK(dot.rfind("digraph fractions {", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 16);
}
