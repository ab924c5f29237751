#pragma once

// Instance files, localise output, reports and DOT export.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locfrac/calculus.hpp"
#include "locfrac/instances.hpp"

namespace locfrac {

  using Json = nlohmann::ordered_json;

  ////////////////////////////////////////////////////////////////////////
  // Loading
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Json const& field(Json const& j, std::string const& key, std::string const& where) {
      if (!j.is_object()) {
        throw LoadError(where + ": expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        throw LoadError(where + ": missing field '" + key + "'");
      }
      return *it;
    }

    inline std::string str(Json const& j, std::string const& where) {
      if (!j.is_string()) {
        throw LoadError(where + ": expected a string");
      }
      return j.get<std::string>();
    }

    inline Json const& arr(Json const& j, std::string const& where, std::size_t len = 0) {
      if (!j.is_array() || (len != 0 && j.size() != len)) {
        throw LoadError(where + ": expected " + (len ? "a list of " + std::to_string(len) : std::string("a list")));
      }
      return j;
    }

    inline std::vector<std::string> strings(Json const& j, std::string const& where) {
      std::vector<std::string> out;
      std::size_t              k = 0;
      for (auto const& v : arr(j, where)) {
        out.push_back(str(v, where + "[" + std::to_string(k++) + "]"));
      }
      return out;
    }

    inline ObjId object_ref(FinCategory const& c, Json const& j, std::string const& where) {
      auto s = str(j, where);
      if (auto x = c.find_object(s)) {
        return *x;
      }
      throw LoadError(where + ": unknown object id '" + s + "'");
    }

    inline MorId morphism_ref(FinCategory const& c, Json const& j, std::string const& where) {
      auto s = str(j, where);
      if (auto f = c.find_morphism(s)) {
        return *f;
      }
      throw LoadError(where + ": unknown morphism id '" + s + "'");
    }

    template <class Entry>
    std::vector<Entry> pairwise(FinCategory const& c, Json const& j, std::string const& where,
                                char const* maps) {
      std::vector<Entry> out;
      std::size_t        k = 0;
      for (auto const& e : arr(j, where)) {
        auto const at = where + "[" + std::to_string(k++) + "]";
        auto const& of = arr(field(e, "of", at), at + ".of", 2);
        auto const& m  = arr(field(e, maps, at), at + "." + maps, 2);
        out.push_back({object_ref(c, of[0], at + ".of[0]"), object_ref(c, of[1], at + ".of[1]"),
                       object_ref(c, field(e, "object", at), at + ".object"),
                       morphism_ref(c, m[0], at + "." + maps + "[0]"),
                       morphism_ref(c, m[1], at + "." + maps + "[1]")});
      }
      return out;
    }
  }  // namespace detail

  /// Parses an instance document. Errors carry the offending location.
  inline Instance parse_instance(std::string const& text) {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (Json::parse_error const& e) {
      throw LoadError(std::string("malformed document: ") + e.what());
    }
    using namespace detail;
    CategoryData data;
    auto         name = str(field(doc, "name", "document"), "name");
    data.objects      = strings(field(doc, "objects", "document"), "objects");
    std::size_t k     = 0;
    for (auto const& m : arr(field(doc, "morphisms", "document"), "morphisms")) {
      auto const at = "morphisms[" + std::to_string(k++) + "]";
      data.morphisms.push_back({str(field(m, "id", at), at + ".id"), str(field(m, "src", at), at + ".src"),
                                str(field(m, "tgt", at), at + ".tgt")});
    }
    auto const& ids = field(doc, "identities", "document");
    if (!ids.is_object()) {
      throw LoadError("identities: expected a map");
    }
    for (auto const& [x, f] : ids.items()) {
      data.identities.emplace_back(x, str(f, "identities." + x));
    }
    k = 0;
    for (auto const& t : arr(field(doc, "composition", "document"), "composition")) {
      auto const at = "composition[" + std::to_string(k++) + "]";
      arr(t, at, 3);
      data.composition.push_back({str(t[0], at + "[0]"), str(t[1], at + "[1]"), str(t[2], at + "[2]")});
    }
    auto c = std::make_shared<FinCategory const>(FinCategory::from_data(data));
    auto dd = DenominatorData::from_ids(c, strings(field(doc, "denominators", "document"), "denominators"),
                                        strings(field(doc, "s_denominators", "document"), "s_denominators"),
                                        strings(field(doc, "t_denominators", "document"), "t_denominators"));
    Instance inst{name, std::move(dd), std::nullopt, std::nullopt, std::nullopt};
    if (doc.contains("initial") || doc.contains("coproducts")) {
      CoproductData cp;
      if (doc.contains("initial")) {
        cp.initial = object_ref(*c, doc["initial"], "initial");
      }
      if (doc.contains("coproducts")) {
        cp.pairwise = pairwise<CoproductEntry>(*c, doc["coproducts"], "coproducts", "emb");
      }
      inst.coproducts = std::move(cp);
    }
    if (doc.contains("terminal") || doc.contains("products")) {
      ProductData pd;
      if (doc.contains("terminal")) {
        pd.terminal = object_ref(*c, doc["terminal"], "terminal");
      }
      if (doc.contains("products")) {
        pd.pairwise = pairwise<ProductEntry>(*c, doc["products"], "products", "proj");
      }
      inst.products = std::move(pd);
    }
    if (doc.contains("addition")) {
      AdditionData add;
      k = 0;
      for (auto const& t : arr(doc["addition"], "addition")) {
        auto const at = "addition[" + std::to_string(k++) + "]";
        arr(t, at, 3);
        add.table.push_back({morphism_ref(*c, t[0], at + "[0]"), morphism_ref(*c, t[1], at + "[1]"),
                             morphism_ref(*c, t[2], at + "[2]")});
      }
      inst.addition = std::move(add);
    }
    return inst;
  }

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw LoadError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  inline Instance load_instance(std::string const& path) {
    try {
      return parse_instance(read_file(path));
    } catch (LoadError const& e) {
      throw LoadError(path + ": " + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Writing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Json names(FinCategory const& c, std::vector<MorId> const& fs) {
      Json out = Json::array();
      for (auto f : fs) {
        out.push_back(c.name(f));
      }
      return out;
    }

    template <class Entries>
    Json pairwise_json(FinCategory const& c, Entries const& es, char const* maps) {
      Json out = Json::array();
      for (auto const& e : es) {
        Json j;
        j["of"]     = {c.name(e.x1), c.name(e.x2)};
        j["object"] = c.name(e.object);
        if constexpr (requires { e.emb1; }) {
          j[maps] = {c.name(e.emb1), c.name(e.emb2)};
        } else {
          j[maps] = {c.name(e.pr1), c.name(e.pr2)};
        }
        out.push_back(std::move(j));
      }
      return out;
    }

    inline Json category_json(std::string const& name, FinCategory const& c) {
      auto data = c.to_data();
      Json doc;
      doc["name"]    = name;
      doc["objects"] = data.objects;
      doc["morphisms"] = Json::array();
      for (auto const& m : data.morphisms) {
        doc["morphisms"].push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
      }
      doc["identities"] = Json::object();
      for (auto const& [x, f] : data.identities) {
        doc["identities"][x] = f;
      }
      doc["composition"] = Json::array();
      for (auto const& t : data.composition) {
        doc["composition"].push_back({t[0], t[1], t[2]});
      }
      return doc;
    }

    /// Canonical layout: one line per list element, short lists inline.
    inline void emit(std::ostream& os, Json const& j, int depth, bool in_list = false) {
      auto const pad = std::string(2 * (depth + 1), ' ');
      auto scalar_list = [](Json const& a) {
        return a.is_array() && std::all_of(a.begin(), a.end(), [](Json const& v) { return v.is_primitive(); });
      };
      if (j.is_object() && in_list && std::all_of(j.begin(), j.end(), [&](Json const& v) {
            return v.is_primitive() || (scalar_list(v) && v.size() <= 3);
          })) {
        os << j.dump();
        return;
      }
      if (j.is_object()) {
        if (j.empty()) {
          os << "{}";
          return;
        }
        os << "{\n";
        bool first = true;
        for (auto const& [k, v] : j.items()) {
          os << (first ? "" : ",\n") << pad << Json(k).dump() << ": ";
          emit(os, v, depth + 1);
          first = false;
        }
        os << "\n" << std::string(2 * depth, ' ') << "}";
        return;
      }
      if (j.is_array() && !scalar_list(j)) {
        if (j.empty()) {
          os << "[]";
          return;
        }
        os << "[\n";
        bool first = true;
        for (auto const& v : j) {
          os << (first ? "" : ",\n") << pad;
          emit(os, v, depth + 1, true);
          first = false;
        }
        os << "\n" << std::string(2 * depth, ' ') << "]";
        return;
      }
      os << j.dump();
    }
  }  // namespace detail

  inline std::string render(Json const& doc) {
    std::ostringstream os;
    detail::emit(os, doc, 0);
    os << "\n";
    return os.str();
  }

  inline Json instance_json(Instance const& inst) {
    auto const& c   = inst.base();
    auto        doc = detail::category_json(inst.name, c);
    doc["denominators"]   = detail::names(c, inst.dd.members(Which::D));
    doc["s_denominators"] = detail::names(c, inst.dd.members(Which::S));
    doc["t_denominators"] = detail::names(c, inst.dd.members(Which::T));
    if (inst.coproducts) {
      if (inst.coproducts->initial) {
        doc["initial"] = c.name(*inst.coproducts->initial);
      }
      doc["coproducts"] = detail::pairwise_json(c, inst.coproducts->pairwise, "emb");
    }
    if (inst.products) {
      if (inst.products->terminal) {
        doc["terminal"] = c.name(*inst.products->terminal);
      }
      doc["products"] = detail::pairwise_json(c, inst.products->pairwise, "proj");
    }
    if (inst.addition) {
      doc["addition"] = Json::array();
      for (auto const& [f, g, h] : inst.addition->table) {
        doc["addition"].push_back({c.name(f), c.name(g), c.name(h)});
      }
    }
    return doc;
  }

  inline std::string write_instance(Instance const& inst) {
    return render(instance_json(inst));
  }

  /// The fraction category as an instance document whose denominators are
  /// the isomorphisms, plus the class and localisation maps. Independent of
  /// the input name, S and T.
  inline Json localise_json(FractionCategory const& fc) {
    auto const& Q    = *fc.as_category;
    auto const& c    = fc.base();
    auto        doc  = detail::category_json("fractions", Q);
    auto        isos = Json::array();
    for (auto k : classify_isomorphisms(fc)) {
      isos.push_back(Q.name(mor_id(k)));
    }
    doc["denominators"]   = isos;
    doc["s_denominators"] = isos;
    doc["t_denominators"] = isos;
    doc["classes"]        = Json::object();
    for (std::size_t k = 0; k < fc.class_count(); ++k) {
      Json members = Json::array();
      for (auto pos : fc.part.members[k]) {
        members.push_back(format(c, fc.part.arrows[pos]));
      }
      doc["classes"][fc.part.class_name(k)] = std::move(members);
    }
    doc["localisation"] = Json::object();
    for (auto f : c.morphisms()) {
      doc["localisation"][c.name(f)] = Q.name(fc.loc(f));
    }
    return doc;
  }

  inline std::string write_localisation(FractionCategory const& fc) {
    return render(localise_json(fc));
  }

  inline std::string to_dot(FractionCategory const& fc) {
    auto const&        Q = *fc.as_category;
    std::ostringstream os;
    os << "digraph fractions {\n";
    for (auto x : Q.objects()) {
      os << "  " << Json(Q.name(x)).dump() << ";\n";
    }
    for (std::size_t k = 0; k < fc.class_count(); ++k) {
      auto f = mor_id(k);
      os << "  " << Json(Q.name(Q.src(f))).dump() << " -> " << Json(Q.name(Q.tgt(f))).dump()
         << " [label=" << Json(format(fc.base(), fc.part.rep(k))).dump() << "];\n";
    }
    os << "}\n";
    return os.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  inline Json items_json(std::vector<ReportItem> const& items) {
    Json out = Json::array();
    for (auto const& i : items) {
      out.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}, {"witness", i.witness}});
    }
    return out;
  }

  /// "(WU) FAIL witness i=e f=e"
  inline std::string item_line(ReportItem const& i, bool with_witness = true) {
    std::string line = i.name + (i.passed ? " PASS" : " FAIL");
    if (with_witness && !i.witness.empty()) {
      line += " witness";
      for (auto const& w : i.witness) {
        line += " " + w;
      }
    }
    return line;
  }

  inline Json validation_json(ValidationReport const& r) {
    Json out = Json::array();
    for (auto const& v : r.entries) {
      out.push_back({{"kind", v.kind}, {"message", v.message}, {"ids", v.ids}});
    }
    return out;
  }

  inline Json three_arrow_json(FinCategory const& c, ThreeArrow const& t) {
    return {c.name(t.b), c.name(t.f), c.name(t.a)};
  }

  /// Rows top to bottom, then columns left to right, each as (b, f, a) or
  /// (p, g, i).
  inline Json grid_json(FinCategory const& c, Grid const& g) {
    Json rows = Json::array(), cols = Json::array();
    for (auto const* t : {&g.top, &g.row2, &g.row3, &g.bottom}) {
      rows.push_back(three_arrow_json(c, *t));
    }
    for (auto const* t : {&g.left, &g.col2, &g.col3, &g.right}) {
      cols.push_back(three_arrow_json(c, *t));
    }
    return {{"rows", rows}, {"columns", cols}};
  }

}  // namespace locfrac
