#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>

#include "locfrac_cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace locfrac;

namespace {

  struct Result {
    int         code;
    std::string out, err;
  };

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path workdir() {
    static fs::path const dir = [] {
      auto p = fs::temp_directory_path() / ("locfrac_cli_" + std::to_string(::getpid()));
      fs::create_directories(p);
      return p;
    }();
    return dir;
  }

  std::string write_named(std::string const& name) {
    auto path = (workdir() / (name + ".json")).string();
    auto r    = run({"instance", name, "-o", path});
    REQUIRE(r.code == 0);
    return path;
  }

}  // namespace

TEST_CASE("instance files round-trip through validate", "[cli]") {
  for (auto const& name : named_instances()) {
    INFO(name);
    auto path = write_named(name);
    CHECK(read_file(path) == write_instance(make_named(name)));
    auto r = run({"validate", path});
    CHECK(r.code == 0);
    CHECK(r.out == "valid\n");
  }
}

TEST_CASE("axioms exit codes and witness lines", "[cli]") {
  auto idem = run({"axioms", write_named("IDEM")});
  CHECK(idem.code == 1);
  CHECK_THAT(idem.out, Catch::Matchers::ContainsSubstring("(WU) FAIL witness i=e f=e"));
  CHECK_THAT(idem.out, Catch::Matchers::EndsWith("uni-fractionable no\n"));

  auto walk = run({"axioms", write_named("WALK"), "--witness"});
  CHECK(walk.code == 0);
  CHECK_THAT(walk.out, Catch::Matchers::ContainsSubstring("factorisation d=f"));
  CHECK_THAT(walk.out, Catch::Matchers::EndsWith("uni-fractionable yes\n"));
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"axioms"}).code == 2);
  CHECK(run({"equal", "x.json", "--left", "a"}).code == 2);
  CHECK(run({"equal", "x.json", "--left", "a", "--right", "b", "--method", "guess"}).code == 2);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK_THAT(help.out, Catch::Matchers::ContainsSubstring("localise"));
}

TEST_CASE("localise writes a reloadable document", "[cli]") {
  auto ch3 = write_named("CH3");
  auto out = (workdir() / "ch3_fr.json").string();
  auto dot = (workdir() / "ch3_fr.dot").string();
  auto r   = run({"localise", ch3, "-o", out, "--dot", dot});
  CHECK(r.code == 0);
  CHECK(r.out == "classes 7\n");
  CHECK(run({"validate", out}).code == 0);
  CHECK(load_instance(out).name == "fractions");
  CHECK(read_file(dot).rfind("digraph", 0) == 0);
}

TEST_CASE("equal by each method", "[cli]") {
  auto ch3 = write_named("CH3");
  for (std::string method : {"oracle", "3x3", "both"}) {
    INFO(method);
    auto r = run({"equal", ch3, "--left", "m_0_1,m_0_1,i_1", "--right", "i_1,i_1,i_1", "--method", method});
    CHECK(r.code == 0);
    auto orc = oracle::fraction_classes(load_instance(ch3).dd);
    auto dd  = load_instance(ch3).dd;
    bool expect = orc.equal(parse_three_arrow(dd, "m_0_1,m_0_1,i_1"), parse_three_arrow(dd, "i_1,i_1,i_1"));
    CHECK(r.out == (expect ? "equal\n" : "not equal\n"));
  }
  auto w = run({"equal", ch3, "--left", "i_0,m_0_1,i_1", "--right", "i_0,m_0_1,i_1", "--method", "both",
                "--witness"});
  CHECK(w.code == 0);
  CHECK_THAT(w.out, Catch::Matchers::StartsWith("equal\n"));
  auto grid = Json::parse(w.out.substr(6));
  CHECK(grid["rows"].size() == 4);
  CHECK(grid["columns"].size() == 4);

  auto par = write_named("PAR");
  auto ne  = run({"equal", par, "--left", "1_X,f,1_Y", "--right", "1_X,g,1_Y", "--method", "both"});
  CHECK(ne.code == 0);
  CHECK(ne.out == "not equal\n");
  auto np = run({"equal", par, "--left", "1_X,f,1_Y", "--right", "1_X,1_X,1_X"});
  CHECK(np.code == 0);
  CHECK(np.out == "not equal\n");
}

TEST_CASE("compose and normalise", "[cli]") {
  auto walk = write_named("WALK");
  auto n    = run({"normalise", walk, "--arrow", "f,1_X,1_X"});
  CHECK(n.code == 0);
  CHECK(n.out == "1_Y,1_Y,f\n");

  auto inst = load_instance(walk);
  auto fc   = build_fraction_category(inst.dd);
  for (std::string mode : {"strict", "lax"}) {
    auto r = run({"compose", walk, "--left", "1_X,f,1_Y", "--right", "f,1_X,1_X", "--mode", mode});
    CHECK(r.code == 0);
    auto k = fc->part.class_of_arrow(identity_arrow(inst.base(), oracle::obj(inst.base(), "X")));
    CHECK(r.out.rfind(fc->part.class_name(k) + " ", 0) == 0);
  }
  auto bad = run({"compose", walk, "--left", "1_X,f,1_Y", "--right", "1_X,f,1_Y"});
  CHECK(bad.code == 1);
  CHECK_THAT(bad.err, Catch::Matchers::StartsWith("error: "));
}

TEST_CASE("check suites", "[cli]") {
  auto dia = run({"check", write_named("DIA")});
  CHECK(dia.code == 0);
  CHECK_THAT(dia.out, Catch::Matchers::ContainsSubstring("transport: coproducts PASS"));
  CHECK_THAT(dia.out, Catch::Matchers::EndsWith("all checks passed\n"));
  auto f2 = run({"check", write_named("F2"), "--suite", "transport"});
  CHECK(f2.code == 0);
  CHECK_THAT(f2.out, Catch::Matchers::ContainsSubstring("transport: sums PASS"));
  auto idem = run({"check", write_named("IDEM"), "--suite", "axioms"});
  CHECK(idem.code == 1);
}

TEST_CASE("bad input files exit with 1", "[cli]") {
  auto broken = (workdir() / "broken.json").string();
  {
    auto doc = instance_json(make_named("WALK"));
    doc["morphisms"][2]["src"] = 7;
    std::ofstream(broken) << doc.dump();
  }
  auto r = run({"validate", broken});
  CHECK(r.code == 1);
  CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("morphisms[2].src"));

  auto garbage = (workdir() / "garbage.json").string();
  std::ofstream(garbage) << "{ nope";
  CHECK(run({"axioms", garbage}).code == 1);
  CHECK(run({"validate", (workdir() / "missing.json").string()}).code == 1);

  auto walk = write_named("WALK");
  auto u    = run({"normalise", walk, "--arrow", "f,zz,1_X"});
  CHECK(u.code == 1);
  CHECK_THAT(u.err, Catch::Matchers::ContainsSubstring("zz"));
  CHECK(run({"instance", "NOPE", "-o", (workdir() / "nope.json").string()}).code == 1);
}
