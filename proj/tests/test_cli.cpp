#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "cruxkh/cli.hpp"
#include "json.hpp"
#include "kh_oracle.hpp"

using namespace ckh;

static Diagram trefoil() { return from_pd({{{1, 4, 2, 5}}, {{3, 6, 4, 1}}, {{5, 2, 6, 3}}}); }

struct Run {
  int code;
  std::string out, err;
};

static Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "cruxkh");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

static std::string tmp_diagram(const Diagram& d, const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("cruxkh_test_" + name + ".json");
  save_file(d, p.string());
  return p.string();
}

TEST_CASE("homology command") {
  Report u = cmd_homology(unknot(), {}, true);
  REQUIRE(u.rows.size() == 2);
  CHECK(u.rows[0] == std::vector<std::string>{"0", "1", "1", "[]"});
  CHECK(u.rows[1] == std::vector<std::string>{"0", "-1", "1", "[]"});

  // trefoil over Z against the brute-force oracle
  const Diagram t = trefoil();
  const HomologyTable ref = homology(oracle::complex(t), Ring::Z(), true);
  Report r = cmd_homology(t, {}, true);
  CHECK(r.rows.size() == ref.groups.size());
  for (const auto& row : r.rows) {
    const HomologyGroup g = ref.at(std::stoi(row[0]), std::stoi(row[1]));
    CHECK(std::to_string(g.free_rank) == row[2]);
    CHECK(g.torsion_str() == row[3]);
  }

  Report ug = cmd_homology(t, {}, false);
  CHECK(ug.header.size() == 3);
  CHECK(ug.rows.size() == ref.ungraded().groups.size());
}

TEST_CASE("exit codes and flag contract") {
  const std::string f = tmp_diagram(trefoil(), "trefoil");
  CHECK(run({"homology", f}).code == kOk);
  CHECK(run({"homology", f, "--graded", "--h", "1"}).code == kFlagConflict);
  CHECK(run({"homology", f, "--graded", "--ungraded"}).code == kFlagConflict);
  CHECK(run({"homology", f, "--bogus"}).code == kFlagConflict);
  CHECK(run({"homology", "/nonexistent/x.json"}).code == kInvalid);
  CHECK(run({"homology", f, "--ring", "fp:4"}).code == kInvalid);
  CHECK(run({"verify", "nosuch"}).code == kInvalid);
  CHECK(run({"verify", "jones", "--corpus", "/nonexistent"}).code == kInvalid);
  CHECK(run({"twist", "-1"}).code == kInvalid);
  CHECK(run({"--help"}).code == kOk);
  CHECK(run({"verify", "relations"}).code == kOk);

  Run a = run({"homology", f, "--ring", "fp:2", "--h", "1"});
  CHECK(a.code == kOk);
  CHECK(a.out.find("graded=0") != std::string::npos);
}

TEST_CASE("reports are deterministic and JSON is well formed") {
  const std::string f = tmp_diagram(trefoil(), "trefoil_det");
  Run a = run({"homology", f, "--json"}), b = run({"homology", f, "--json"});
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["command"] == "homology");
  CHECK(j["digest"] == digest(trefoil()));
  CHECK(run({"twist", "3", "--check-main-b"}).out == run({"twist", "3", "--check-main-b"}).out);
  CHECK(digest(trefoil()) != digest(mirror(trefoil())));
  CHECK(digest(trefoil()).size() == 16);
}

TEST_CASE("twist decomposition") {
  // r = 0: unknot groups
  Report r0 = cmd_twist(0, {}, true);
  CHECK(r0.passed());
  CHECK(r0.rows.size() == 2);
  for (int r = 1; r <= 4; ++r) CHECK(cmd_twist(r, {}, true).passed());
  for (int r = 0; r <= 4; ++r) {
    CHECK(cmd_twist(r, {1, 0, Ring::Z()}, true).passed());
    CHECK(cmd_twist(r, {2, 1, Ring::Fp(3)}, true).passed());
    Report q = cmd_twist(r, {0, 1, Ring::Q()}, false);
    CHECK(q.passed());
    CHECK(std::any_of(q.checks.begin(), q.checks.end(), [](const Check& c) { return c.name == "G-vanishes"; }));
  }
  // the singular model is concentrated in four degrees around c0
  for (int r = 0; r <= 3; ++r) {
    const int c0 = -r - (r % 2 ? -1 : 1) - 1;
    ChainComplex m = twist_singular_model(r, {});
    CHECK(m.lo() == c0 - 2);
    CHECK(m.hi() == c0 + 2);
    const HomologyTable h = homology(m, Ring::Z(), false);
    CHECK(h.at(c0 - 2).free_rank == 1);  // Ann(2x)
    CHECK(h.at(c0 - 1).free_rank == 1);
    CHECK(h.at(c0 - 1).torsion.size() == 1);  // A/(2x)
    CHECK(h == homology(kh_complex(twist_family(r, DoubleMode::Keep), {}), Ring::Z(), false));
  }
}

TEST_CASE("corpus round trip and suites") {
  const auto corpus = load_corpus(CRUXKH_CORPUS);
  REQUIRE(corpus.size() > 40);
  const auto dir = std::filesystem::temp_directory_path() / "cruxkh_test_corpus";
  std::filesystem::remove_all(dir);
  std::vector<CorpusEntry> few(corpus.begin(), corpus.begin() + 5);
  save_corpus(dir.string(), few);
  const auto back = load_corpus(dir.string());
  REQUIRE(back.size() == few.size());
  for (std::size_t i = 0; i < few.size(); ++i) {
    CHECK(back[i].d == few[i].d);
    CHECK(back[i].family == few[i].family);
  }
  for (const auto& e : corpus) {
    CHECK(e.singular == (e.d.double_points() > 0));
    CHECK(e.components == components(e.d));
  }

  std::vector<CorpusEntry> twist;
  for (const auto& e : corpus)
    if (e.name.size() == 2 && e.name[0] == 'G' && e.name[1] <= '4') twist.push_back(e);
  CHECK(twist.size() == 5);
  Report cx = cmd_verify("cone-xi", twist);
  CHECK(cx.passed());
  CHECK(!cx.checks.empty());
  CHECK(cmd_verify("jones", corpus).passed());
  CHECK(cmd_verify("relations", {}).checks.size() == 48);
  CHECK_THROWS(cmd_verify("nosuch", {}));

  // a failing check is reported, not thrown, and flips the exit status
  Report bad = cmd_verify("jones", twist);
  bad.checks.push_back({"forced", "x", false, ""});
  CHECK(!bad.passed());
  CHECK(bad.tsv().find("FAIL") != std::string::npos);
}
