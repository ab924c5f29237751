#pragma once

// Built-in instances: posets, monoids and the small named tables used by the
// tests and the CLI.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locfrac/transport.hpp"

namespace locfrac {

  /// A category with denominators plus the optional structure blocks of an
  /// instance file.
  struct Instance {
    std::string                 name;
    DenominatorData             dd;
    std::optional<CoproductData> coproducts;
    std::optional<ProductData>   products;
    std::optional<AdditionData>  addition;

    FinCategory const& base() const {
      return dd.base();
    }
  };

  /// all | identities | listed ids (taken literally, identities included
  /// only if listed).
  struct Selector {
    enum class Kind { all, identities, listed } kind = Kind::all;
    std::vector<std::string> ids;

    static Selector all() {
      return {Kind::all, {}};
    }
    static Selector identities() {
      return {Kind::identities, {}};
    }
    static Selector listed(std::vector<std::string> ids) {
      return {Kind::listed, std::move(ids)};
    }

    std::vector<std::string> select(FinCategory const& c) const {
      std::vector<std::string> out;
      switch (kind) {
        case Kind::all:
          for (auto f : c.morphisms()) {
            out.push_back(c.name(f));
          }
          break;
        case Kind::identities:
          for (auto x : c.objects()) {
            out.push_back(c.name(c.identity(x)));
          }
          break;
        case Kind::listed:
          out = ids;
          break;
      }
      return out;
    }
  };

  namespace detail {
    inline DenominatorData with_selectors(std::shared_ptr<FinCategory const> c, Selector const& d,
                                          std::optional<Selector> const& s,
                                          std::optional<Selector> const& t) {
      auto ds = d.select(*c);
      auto ss = s ? s->select(*c) : ds;
      auto ts = t ? t->select(*c) : ds;
      return DenominatorData::from_ids(c, ds, ss, ts);
    }

    inline std::shared_ptr<FinCategory const> checked(CategoryData const& data) {
      auto c = std::make_shared<FinCategory const>(FinCategory::from_data(data));
      auto r = validate_category(*c);
      if (!r.ok()) {
        throw InvariantError("generated table is not a category: " + r.entries.front().message);
      }
      return c;
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Posets
  ////////////////////////////////////////////////////////////////////////

  /// `le` lists all pairs x <= y, reflexive pairs included. Identities are
  /// "i_X", the other arrows "m_X_Y" ordered by (index X, index Y).
  inline Instance make_poset(std::string name, std::vector<std::string> const& elements,
                             std::vector<std::pair<std::string, std::string>> const& le,
                             Selector const& d, std::optional<Selector> const& s = std::nullopt,
                             std::optional<Selector> const& t = std::nullopt) {
    std::map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (!pos.emplace(elements[k], k).second) {
        throw DomainError("duplicate poset element '" + elements[k] + "'");
      }
    }
    std::size_t const        n = elements.size();
    std::vector<char>        rel(n * n, 0);
    for (auto const& [x, y] : le) {
      auto ix = pos.find(x), iy = pos.find(y);
      if (ix == pos.end() || iy == pos.end()) {
        throw DomainError("relation names unknown element in (" + x + ", " + y + ")");
      }
      rel[ix->second * n + iy->second] = 1;
    }
    auto R = [&](std::size_t x, std::size_t y) { return rel[x * n + y] != 0; };
    for (std::size_t x = 0; x < n; ++x) {
      if (!R(x, x)) {
        throw DomainError("relation is not reflexive at '" + elements[x] + "'");
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && R(x, y) && R(y, x)) {
          throw DomainError("relation is not antisymmetric at ('" + elements[x] + "', '" + elements[y] + "')");
        }
        for (std::size_t z = 0; z < n; ++z) {
          if (R(x, y) && R(y, z) && !R(x, z)) {
            throw DomainError("relation is not transitive at ('" + elements[x] + "', '" + elements[y]
                              + "', '" + elements[z] + "')");
          }
        }
      }
    }
    auto arrow = [&](std::size_t x, std::size_t y) {
      return x == y ? "i_" + elements[x] : "m_" + elements[x] + "_" + elements[y];
    };
    CategoryData data;
    data.objects = elements;
    for (std::size_t x = 0; x < n; ++x) {
      data.morphisms.push_back({arrow(x, x), elements[x], elements[x]});
      data.identities.emplace_back(elements[x], arrow(x, x));
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x != y && R(x, y)) {
          data.morphisms.push_back({arrow(x, y), elements[x], elements[y]});
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (R(x, y) && R(y, z)) {
            data.composition.push_back({arrow(x, y), arrow(y, z), arrow(x, z)});
          }
        }
      }
    }
    auto c = detail::checked(data);
    return {std::move(name), detail::with_selectors(c, d, s, t), std::nullopt, std::nullopt, std::nullopt};
  }

  inline std::vector<std::pair<std::string, std::string>> chain_relation(std::vector<std::string> const& xs) {
    std::vector<std::pair<std::string, std::string>> le;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i; j < xs.size(); ++j) {
        le.emplace_back(xs[i], xs[j]);
      }
    }
    return le;
  }

  /// Elements "0" < "1" < ... < "n-1".
  inline Instance chain(std::size_t n, Selector const& d, std::optional<Selector> const& s = std::nullopt,
                        std::optional<Selector> const& t = std::nullopt) {
    std::vector<std::string> xs;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(std::to_string(i));
    }
    return make_poset("chain" + std::to_string(n), xs, chain_relation(xs), d, s, t);
  }

  /// bot < a, b < top.
  inline Instance diamond(Selector const& d, std::optional<Selector> const& s = std::nullopt,
                          std::optional<Selector> const& t = std::nullopt) {
    std::vector<std::string> xs{"bot", "a", "b", "top"};
    std::vector<std::pair<std::string, std::string>> le{
        {"bot", "bot"}, {"a", "a"}, {"b", "b"}, {"top", "top"}, {"bot", "a"},
        {"bot", "b"},   {"bot", "top"}, {"a", "top"}, {"b", "top"}};
    return make_poset("diamond", xs, le, d, s, t);
  }

  inline Instance antichain(std::size_t n, Selector const& d) {
    std::vector<std::string>                         xs;
    std::vector<std::pair<std::string, std::string>> le;
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(std::to_string(i));
      le.emplace_back(xs.back(), xs.back());
    }
    return make_poset("antichain" + std::to_string(n), xs, le, d);
  }

  inline Instance with_lattice_structure(Instance inst) {
    inst.coproducts = derive_joins(inst.base());
    inst.products   = derive_meets(inst.base());
    return inst;
  }

  ////////////////////////////////////////////////////////////////////////
  // Monoids
  ////////////////////////////////////////////////////////////////////////

  /// One object "*"; table[x][y] is the index of x followed by y.
  inline Instance make_monoid(std::string name, std::vector<std::string> const& elements,
                              std::vector<std::vector<std::size_t>> const& table, std::size_t unit,
                              Selector const& d, std::optional<Selector> const& s = std::nullopt,
                              std::optional<Selector> const& t = std::nullopt) {
    std::size_t const n = elements.size();
    if (table.size() != n || unit >= n
        || std::any_of(table.begin(), table.end(), [&](auto const& row) {
             return row.size() != n || std::any_of(row.begin(), row.end(), [&](auto v) { return v >= n; });
           })) {
      throw DomainError("monoid table is not a total " + std::to_string(n) + "x" + std::to_string(n) + " table");
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (table[unit][x] != x || table[x][unit] != x) {
        throw DomainError("'" + elements[unit] + "' is not a unit at '" + elements[x] + "'");
      }
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (table[table[x][y]][z] != table[x][table[y][z]]) {
            throw DomainError("table is not associative at ('" + elements[x] + "', '" + elements[y] + "', '"
                              + elements[z] + "')");
          }
        }
      }
    }
    CategoryData data;
    data.objects = {"*"};
    for (auto const& e : elements) {
      data.morphisms.push_back({e, "*", "*"});
    }
    data.identities.emplace_back("*", elements[unit]);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        data.composition.push_back({elements[x], elements[y], elements[table[x][y]]});
      }
    }
    auto c = detail::checked(data);
    return {std::move(name), detail::with_selectors(c, d, s, t), std::nullopt, std::nullopt, std::nullopt};
  }

  /// Z/n under multiplication, elements "0".."n-1".
  inline Instance multiplicative_mod(std::size_t n, Selector const& d) {
    std::vector<std::string>              xs;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x) {
      xs.push_back(std::to_string(x));
      for (std::size_t y = 0; y < n; ++y) {
        table[x][y] = (x * y) % n;
      }
    }
    return make_monoid("Z" + std::to_string(n), xs, table, 1 % n, d);
  }

  ////////////////////////////////////////////////////////////////////////
  // Named instances
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Instance from_table(std::string name, CategoryData const& data, Selector const& d,
                               std::optional<Selector> const& s = std::nullopt,
                               std::optional<Selector> const& t = std::nullopt) {
      auto c = checked(data);
      return {std::move(name), with_selectors(c, d, s, t), std::nullopt, std::nullopt, std::nullopt};
    }

    inline CategoryData walk_table() {
      return {{"X", "Y"},
              {{"1_X", "X", "X"}, {"1_Y", "Y", "Y"}, {"f", "X", "Y"}},
              {{"X", "1_X"}, {"Y", "1_Y"}},
              {{"1_X", "1_X", "1_X"},
               {"1_X", "f", "f"},
               {"1_Y", "1_Y", "1_Y"},
               {"f", "1_Y", "f"}}};
    }

    inline CategoryData parallel_table() {
      return {{"X", "Y"},
              {{"1_X", "X", "X"}, {"1_Y", "Y", "Y"}, {"f", "X", "Y"}, {"g", "X", "Y"}},
              {{"X", "1_X"}, {"Y", "1_Y"}},
              {{"1_X", "1_X", "1_X"},
               {"1_X", "f", "f"},
               {"1_X", "g", "g"},
               {"1_Y", "1_Y", "1_Y"},
               {"f", "1_Y", "f"},
               {"g", "1_Y", "g"}}};
    }

    inline Instance renamed(Instance inst, std::string name) {
      inst.name = std::move(name);
      return inst;
    }
  }  // namespace detail

  inline std::vector<std::string> const& named_instances() {
    static std::vector<std::string> const names{
        "WALK", "CH3",  "CH3-B", "DIA",  "DIA-B", "PAR",        "IDEM",      "Z4",
        "ZERO", "F2",   "PLANT-2OF3", "PLANT-FAC", "PAR-F"};
    return names;
  }

  /// The instances with a passing axiom suite.
  inline std::vector<std::string> const& positive_instances() {
    static std::vector<std::string> const names{"WALK", "CH3", "CH3-B", "DIA", "DIA-B", "PAR", "Z4", "ZERO", "F2"};
    return names;
  }

  inline Instance make_named(std::string const& name) {
    using S                          = Selector;
    std::vector<std::string> const d3{"i_0", "i_1", "i_2", "m_0_1"};
    if (name == "WALK") {
      return detail::from_table(name, detail::walk_table(), S::all());
    }
    if (name == "CH3") {
      auto c = chain(3, S::listed(d3));
      return with_lattice_structure(detail::renamed(std::move(c), name));
    }
    if (name == "CH3-B") {
      auto c = chain(3, S::listed(d3), S::listed(d3), S::identities());
      return with_lattice_structure(detail::renamed(std::move(c), name));
    }
    if (name == "DIA") {
      return with_lattice_structure(detail::renamed(diamond(S::all()), name));
    }
    if (name == "DIA-B") {
      return with_lattice_structure(detail::renamed(diamond(S::all(), S::all(), S::identities()), name));
    }
    if (name == "PAR") {
      return detail::from_table(name, detail::parallel_table(), S::identities());
    }
    if (name == "PAR-F") {
      return detail::from_table(name, detail::parallel_table(), S::listed({"1_X", "1_Y", "f"}));
    }
    if (name == "IDEM") {
      return make_monoid(name, {"1", "e"}, {{0, 1}, {1, 1}}, 0, S::all());
    }
    if (name == "Z4") {
      return detail::renamed(multiplicative_mod(4, S::listed({"1", "3"})), name);
    }
    if (name == "ZERO") {
      auto z     = make_monoid(name, {"0"}, {{0}}, 0, S::all());
      auto f     = z.base().morphisms()[0];
      z.addition = AdditionData{{{f, f, f}}};
      return z;
    }
    if (name == "F2") {
      auto z           = make_monoid(name, {"0", "1"}, {{0, 0}, {0, 1}}, 1, S::listed({"1"}));
      auto const& c    = z.base();
      MorId const zero = *c.find_morphism("0"), one = *c.find_morphism("1");
      z.addition       = AdditionData{{{zero, zero, zero}, {zero, one, one}, {one, zero, one}, {one, one, zero}}};
      return z;
    }
    if (name == "PLANT-2OF3") {
      // (Cat) holds, 0<=1 and 0<=2 lie in D but 1<=2 does not.
      std::vector<std::string> d{"i_0", "i_1", "i_2", "m_0_1", "m_0_2"};
      return detail::renamed(chain(3, S::listed(d), S::identities(), S::listed(d)), name);
    }
    if (name == "PLANT-FAC") {
      return detail::from_table(name, detail::walk_table(), S::all(), S::identities(), S::identities());
    }
    throw DomainError("unknown instance '" + name + "'");
  }

}  // namespace locfrac
