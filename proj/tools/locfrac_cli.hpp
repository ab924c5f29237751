#pragma once

// Command-line front end. `run` is kept separate from main so the tests can
// drive it in-process.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locfrac/locfrac.hpp"

namespace locfrac::cli {

  enum Exit : int { ok = 0, failure = 1, usage = 2 };

  namespace detail {
    inline void write_file(std::string const& path, std::string const& text) {
      std::ofstream os(path, std::ios::binary);
      if (!os || !(os << text)) {
        throw Error("cannot write '" + path + "'");
      }
    }

    inline std::string ore_line(FinCategory const& c, OreWitness const& w) {
      bool const push = w.side == OreSide::pushout;
      return std::string(push ? "pushout i=" : "pullback p=") + c.name(w.den) + " f=" + c.name(w.f)
             + " f'=" + c.name(w.f_prime) + (push ? " i'=" : " p'=") + c.name(w.den_prime);
    }

    inline int print_items(std::ostream& out, std::vector<ReportItem> const& items, std::string const& prefix = {}) {
      bool good = true;
      for (auto const& i : items) {
        out << prefix << item_line(i) << "\n";
        if (!i.detail.empty()) {
          out << prefix << "  " << i.detail << "\n";
        }
        good = good && i.passed;
      }
      return good ? Exit::ok : Exit::failure;
    }

    inline int validate(std::string const& file, std::ostream& out) {
      auto inst   = load_instance(file);
      auto report = validate_category(inst.base());
      for (auto const& f : inst.base().morphisms()) {
        for (auto w : {Which::S, Which::T}) {
          if (inst.dd.in(w, f) && !inst.dd.in_D(f)) {
            report.add("subset", std::string(to_string(w)) + "-denominator '" + inst.base().name(f) + "' is not in D",
                       {inst.base().name(f)});
          }
        }
      }
      if (inst.coproducts) {
        for (auto const& v : validate_coproducts(inst.base(), *inst.coproducts).entries) {
          report.entries.push_back(v);
        }
      }
      if (inst.products) {
        for (auto const& v : validate_products(inst.base(), *inst.products).entries) {
          report.entries.push_back(v);
        }
      }
      for (auto const& v : report.entries) {
        out << v.kind << ": " << v.message << "\n";
      }
      out << (report.ok() ? "valid" : "invalid") << "\n";
      return report.ok() ? Exit::ok : Exit::failure;
    }

    inline int axioms(std::string const& file, bool witness, std::ostream& out) {
      auto        inst   = load_instance(file);
      auto const& c      = inst.base();
      auto        report = is_uni_fractionable(inst.dd);
      int         status = print_items(out, report.items);
      if (witness) {
        for (auto const& w : report.wu.cache.pushout) {
          if (w) {
            out << ore_line(c, *w) << "\n";
          }
        }
        for (auto const& w : report.wu.cache.pullback) {
          if (w) {
            out << ore_line(c, *w) << "\n";
          }
        }
        for (auto const& w : report.fac.cache) {
          if (w) {
            out << "factorisation d=" << c.name(w->d) << " i=" << c.name(w->i) << " p=" << c.name(w->p) << "\n";
          }
        }
      }
      out << "uni-fractionable " << (report.ok() ? "yes" : "no") << "\n";
      return status;
    }

    inline int localise(std::string const& file, std::string const& output, std::string const& dot,
                        std::ostream& out) {
      auto inst = load_instance(file);
      auto fc   = build_fraction_category(inst.dd);
      write_file(output, write_localisation(*fc));
      if (!dot.empty()) {
        write_file(dot, to_dot(*fc));
      }
      out << "classes " << fc->class_count() << "\n";
      return Exit::ok;
    }

    inline int equal(std::string const& file, std::string const& left, std::string const& right, bool witness,
                     std::string const& method, std::ostream& out, std::ostream& err) {
      auto        inst = load_instance(file);
      auto const& c    = inst.base();
      auto        t1   = parse_three_arrow(inst.dd, left);
      auto        t2   = parse_three_arrow(inst.dd, right);
      if (!parallel(c, t1, t2)) {
        out << "not equal\n";
        return Exit::ok;
      }
      std::optional<bool> oracle;
      EqualityResult      grid;
      if (method != "3x3") {
        oracle = fraction_equivalence(inst.dd).equal(t1, t2);
      }
      if (method != "oracle") {
        grid = equal_by_3x3(inst.dd, t1, t2);
        if (oracle && *oracle != grid.equal) {
          err << "error: divergence: oracle says " << (*oracle ? "equal" : "not equal") << ", 3x3 says "
              << (grid.equal ? "equal" : "not equal") << "\n";
          return Exit::failure;
        }
      }
      bool const result = oracle ? *oracle : grid.equal;
      out << (result ? "equal" : "not equal") << "\n";
      if (witness && grid.witness) {
        out << render(grid_json(c, as_grid(c, *grid.witness)));
      }
      return Exit::ok;
    }

    inline int compose(std::string const& file, std::string const& left, std::string const& right,
                       std::string const& mode, std::ostream& out) {
      auto inst = load_instance(file);
      auto fc   = build_fraction_category(inst.dd);
      auto t1   = parse_three_arrow(inst.dd, left);
      auto t2   = parse_three_arrow(inst.dd, right);
      auto k    = compose_fractions(*fc->uf, fc->part, t1, t2, mode == "strict");
      out << fc->part.class_name(k) << " " << format(inst.base(), fc->part.rep(k)) << "\n";
      return Exit::ok;
    }

    inline int normalise(std::string const& file, std::string const& arrow, std::ostream& out) {
      auto inst = load_instance(file);
      auto uf   = UniFractionable::make(inst.dd);
      out << format(inst.base(), locfrac::normalise(*uf, parse_three_arrow(inst.dd, arrow))) << "\n";
      return Exit::ok;
    }

    inline int check(std::string const& file, std::string const& suite, std::ostream& out) {
      auto                     inst = load_instance(file);
      std::vector<SuiteReport> reports;
      if (suite == "axioms" || suite == "all") {
        reports.push_back(axiom_suite(inst));
      }
      bool const axioms_ok = is_uni_fractionable(inst.dd).ok();
      if (suite == "theorem" || suite == "all") {
        reports.push_back(theorem_suite(inst));
      }
      if (suite == "transport" || (suite == "all" && axioms_ok)) {
        reports.push_back(transport_suite(inst));
      }
      int status = Exit::ok;
      for (auto const& r : reports) {
        if (print_items(out, r.items, r.suite + ": ") != Exit::ok) {
          status = Exit::failure;
        }
      }
      out << (status == Exit::ok ? "all checks passed" : "checks failed") << "\n";
      return status;
    }

    inline int instance(std::string const& name, std::string const& output, std::ostream& out) {
      write_file(output, write_instance(make_named(name)));
      out << "wrote " << name << "\n";
      return Exit::ok;
    }
  }  // namespace detail

  /// `args` excludes the program name.
  inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Localisation of finite categories by 3-arrow fractions", "locfrac"};
    app.require_subcommand(1);

    std::string file, output, dot, left, right, arrow, name;
    std::string method = "oracle", mode = "strict", suite = "all";
    bool        witness = false;

    auto* validate = app.add_subcommand("validate", "Check an instance document");
    validate->add_option("FILE", file)->required();

    auto* axioms = app.add_subcommand("axioms", "Check the uni-fractionable axioms");
    axioms->add_option("FILE", file)->required();
    axioms->add_flag("--witness", witness, "Print all cached witnesses");

    auto* localise = app.add_subcommand("localise", "Write the fraction category");
    localise->add_option("FILE", file)->required();
    localise->add_option("-o", output)->required();
    localise->add_option("--dot", dot);

    auto* equal = app.add_subcommand("equal", "Decide fraction equality");
    equal->add_option("FILE", file)->required();
    equal->add_option("--left", left)->required();
    equal->add_option("--right", right)->required();
    equal->add_flag("--witness", witness, "Print the 3x3 witness");
    equal->add_option("--method", method)->check(CLI::IsMember({"oracle", "3x3", "both"}));

    auto* compose = app.add_subcommand("compose", "Compose two fractions");
    compose->add_option("FILE", file)->required();
    compose->add_option("--left", left)->required();
    compose->add_option("--right", right)->required();
    compose->add_option("--mode", mode)->check(CLI::IsMember({"strict", "lax"}));

    auto* normalise = app.add_subcommand("normalise", "Normal representative of a 3-arrow");
    normalise->add_option("FILE", file)->required();
    normalise->add_option("--arrow", arrow)->required();

    auto* check = app.add_subcommand("check", "Run check suites");
    check->add_option("FILE", file)->required();
    check->add_option("--suite", suite)->check(CLI::IsMember({"axioms", "theorem", "transport", "all"}));

    auto* instance = app.add_subcommand("instance", "Write a built-in instance");
    instance->add_option("NAME", name)->required();
    instance->add_option("-o", output)->required();

    try {
      std::reverse(args.begin(), args.end());
      app.parse(std::move(args));
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return Exit::ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return Exit::ok;
    } catch (CLI::ParseError const& e) {
      err << "usage error: " << e.what() << "\n";
      return Exit::usage;
    }

    try {
      if (validate->parsed()) {
        return detail::validate(file, out);
      }
      if (axioms->parsed()) {
        return detail::axioms(file, witness, out);
      }
      if (localise->parsed()) {
        return detail::localise(file, output, dot, out);
      }
      if (equal->parsed()) {
        return detail::equal(file, left, right, witness, method, out, err);
      }
      if (compose->parsed()) {
        return detail::compose(file, left, right, mode, out);
      }
      if (normalise->parsed()) {
        return detail::normalise(file, arrow, out);
      }
      if (check->parsed()) {
        return detail::check(file, suite, out);
      }
      return detail::instance(name, output, out);
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return Exit::failure;
    }
  }

}  // namespace locfrac::cli
