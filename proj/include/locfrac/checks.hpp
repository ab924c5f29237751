#pragma once

// Exhaustive check suites over an instance, shared by the CLI and tests.

#include <string>
#include <vector>

#include "locfrac/calculus.hpp"
#include "locfrac/instances.hpp"

namespace locfrac {

  struct SuiteReport {
    std::string             suite;
    std::vector<ReportItem> items;

    bool ok() const {
      return std::all_of(items.begin(), items.end(), [](auto const& i) { return i.passed; });
    }
  };

  inline SuiteReport axiom_suite(Instance const& inst) {
    return {"axioms", is_uni_fractionable(inst.dd).items};
  }

  namespace detail {
    template <class Body>
    ReportItem guarded(std::string name, Body&& body) {
      ReportItem item{std::move(name), true, {}, {}};
      try {
        body(item);
      } catch (Error const& e) {
        item.passed = false;
        item.detail = e.what();
      }
      return item;
    }
  }  // namespace detail

  /// Number of parallel pairs where the 3x3 criterion and the union-find
  /// oracle disagree, with the first such pair in `first`.
  struct AgreementSweep {
    std::size_t                                    pairs       = 0;
    std::size_t                                    divergences = 0;
    std::optional<std::pair<ThreeArrow, ThreeArrow>> first;
  };

  inline AgreementSweep sweep_3x3_against_oracle(DenominatorData const& dd, FractionPartition const& part) {
    AgreementSweep s;
    auto const&    c = dd.base();
    for (auto const& t1 : part.arrows) {
      for (auto const& t2 : part.arrows) {
        if (!parallel(c, t1, t2)) {
          continue;
        }
        ++s.pairs;
        if (equal_by_3x3(dd, t1, t2).equal != part.equal(t1, t2)) {
          ++s.divergences;
          if (!s.first) {
            s.first = std::pair{t1, t2};
          }
        }
      }
    }
    return s;
  }

  /// Builds the fraction category and sweeps its laws, L, inverses,
  /// splitting, normal forms and the 3x3 criterion.
  inline SuiteReport theorem_suite(Instance const& inst) {
    SuiteReport r{"theorem", {}};
    FcPtr       fc;
    r.items.push_back(detail::guarded("build", [&](ReportItem&) { fc = build_fraction_category(inst.dd); }));
    if (!fc) {
      return r;
    }
    auto const& c = fc->base();
    auto const& Q = *fc->as_category;
    r.items.push_back(detail::guarded("category laws", [&](ReportItem& i) {
      auto v = validate_category(Q);
      i.passed = v.ok();
      if (!i.passed) {
        i.detail = v.entries.front().message;
      }
    }));
    r.items.push_back(detail::guarded("localisation functor", [&](ReportItem& i) {
      auto v = validate_functor(fc->localisation);
      i.passed = v.ok();
      if (!i.passed) {
        i.detail = v.entries.front().message;
      }
    }));
    r.items.push_back(detail::guarded("denominator inverses", [&](ReportItem&) {
      for (auto d : inst.dd.members(Which::D)) {
        inverse_of_denominator(*fc, d);
      }
    }));
    r.items.push_back(detail::guarded("splitting", [&](ReportItem& i) {
      for (auto const& t : fc->part.arrows) {
        auto const split = fc->compose(inverse_of_denominator(*fc, t.b), fc->loc(t.f),
                                       inverse_of_denominator(*fc, t.a));
        if (split != fc->cls(t)) {
          i.passed  = false;
          i.witness = {"t=" + format(c, t)};
          return;
        }
      }
    }));
    r.items.push_back(detail::guarded("normal forms", [&](ReportItem& i) {
      for (auto const& t : fc->part.arrows) {
        auto n = normalise(*fc->uf, t);
        if (!fc->part.equal(n, t)) {
          i.passed  = false;
          i.witness = {"t=" + format(c, t)};
          return;
        }
      }
    }));
    r.items.push_back(detail::guarded("3x3 criterion", [&](ReportItem& i) {
      auto s   = sweep_3x3_against_oracle(inst.dd, fc->part);
      i.detail = std::to_string(s.pairs) + " pairs, " + std::to_string(s.divergences) + " divergences";
      if (s.first) {
        i.passed  = false;
        i.witness = {"left=" + format(c, s.first->first), "right=" + format(c, s.first->second)};
      }
    }));
    return r;
  }

  /// Coproducts, products and sums, each only when the instance supplies
  /// the data.
  inline SuiteReport transport_suite(Instance const& inst) {
    SuiteReport r{"transport", {}};
    FcPtr       fc;
    r.items.push_back(detail::guarded("build", [&](ReportItem&) { fc = build_fraction_category(inst.dd); }));
    if (!fc) {
      return r;
    }
    auto const& c = inst.base();
    auto absorb = [&](std::string const& prefix, TransportReport const& t) {
      for (auto item : t.items) {
        item.name = prefix + " " + item.name;
        r.items.push_back(std::move(item));
      }
    };
    if (inst.coproducts) {
      r.items.push_back(detail::guarded("coproducts valid", [&](ReportItem& i) {
        auto v = validate_coproducts(c, *inst.coproducts);
        i.passed = v.ok();
        if (!i.passed) {
          i.detail = v.entries.front().message;
        }
      }));
      r.items.push_back(detail::guarded("coproducts", [&](ReportItem& i) {
        auto t   = check_localisation_preserves_coproducts(*fc, *inst.coproducts);
        i.passed = t.ok();
        i.detail = std::to_string(t.formula_checks) + " formula checks";
        absorb("coproducts:", t);
      }));
    }
    if (inst.products) {
      r.items.push_back(detail::guarded("products valid", [&](ReportItem& i) {
        auto v = validate_products(c, *inst.products);
        i.passed = v.ok();
        if (!i.passed) {
          i.detail = v.entries.front().message;
        }
      }));
      r.items.push_back(detail::guarded("products", [&](ReportItem& i) {
        auto t   = check_localisation_preserves_products(*fc, *inst.products);
        i.passed = t.ok();
        i.detail = std::to_string(t.formula_checks) + " formula checks";
        absorb("products:", t);
      }));
    }
    if (inst.addition) {
      r.items.push_back(detail::guarded("sums", [&](ReportItem& i) {
        auto t   = sum_formula_check(*fc, *inst.addition);
        i.passed = t.ok();
        i.detail = std::to_string(t.formula_checks) + " formula checks";
        absorb("sums:", t);
      }));
    }
    return r;
  }

}  // namespace locfrac
