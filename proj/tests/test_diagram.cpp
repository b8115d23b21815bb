#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cruxkh/diagram.hpp"

using namespace ckh;

static Diagram trefoil_pd() { return from_pd({{{1, 4, 2, 5}}, {{3, 6, 4, 1}}, {{5, 2, 6, 3}}}); }

TEST_CASE("parse and serialize") {
  Diagram u = parse(R"({"vertices":[],"free_loops":1})");
  CHECK(u.vertices.empty());
  CHECK(u.free_loops == 1);
  CHECK(components(u) == 1);
  Diagram k = parse(R"({"vertices":[{"id":0,"kind":"pos","ports":[0,1,0,1]}],"free_loops":0})");
  CHECK(stats(k).n_plus == 1);
  CHECK(stats(k).w_tilde == 1);
  CHECK(components(k) == 1);
  CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0,"kind":"pos","ports":[0,1,1,1]}],"free_loops":0})"),
                  OrientationInconsistent);
  CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0,"kind":"pos","ports":[0,1,2,1]}],"free_loops":0})"), DanglingEdge);
  CHECK_THROWS_AS(parse("{not json"), MalformedInput);
  CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0,"kind":"odd","ports":[0,1,0,1]}]})"), MalformedInput);
  // a virtual (non-planar) port order
  CHECK_THROWS_AS(parse(R"({"vertices":[{"id":0,"kind":"pos","ports":[0,1,1,0]}],"free_loops":0})"), MalformedInput);
  for (const auto& d : {u, k, trefoil_pd(), twist_family(2, DoubleMode::Keep)}) {
    std::string s = serialize(d);
    CHECK(serialize(parse(s)) == s);
    CHECK(parse(s) == d);
  }
}

TEST_CASE("PD import") {
  Diagram t = trefoil_pd();
  CHECK(stats(t).n_minus == 3);
  CHECK(components(t) == 1);
  Diagram hopf = from_pd({{{4, 1, 3, 2}}, {{2, 3, 1, 4}}});
  CHECK(components(hopf) == 2);
  CHECK(stats(hopf).n_minus == 2);
  Diagram fig8 = from_pd({{{4, 2, 5, 1}}, {{8, 6, 1, 5}}, {{6, 3, 7, 4}}, {{2, 7, 3, 8}}});
  CHECK(stats(fig8).n_plus == 2);
  CHECK(stats(fig8).n_minus == 2);
  CHECK(is_planar(fig8));
}

TEST_CASE("twist family") {
  for (int r = 0; r <= 6; ++r) {
    Diagram g = twist_family(r, DoubleMode::Keep);
    auto s = stats(g);
    CHECK(s.n_double == 1);
    CHECK(s.n_plus + s.n_minus == r + 2);
    CHECK(components(g) == 1);
    CHECK(is_planar(g));
    CHECK(resolve_double(g, kTwistDoubleId, Kind::Neg) == twist_knot(r + 1));
    CHECK(make_double(resolve_double(g, kTwistDoubleId, Kind::Pos), kTwistDoubleId) == g);
  }
  CHECK(stats(twist_family(0, DoubleMode::Keep)).n_plus + stats(twist_family(0, DoubleMode::Keep)).n_minus == 2);
  CHECK(stats(twist_family(0, DoubleMode::Negative)).n_minus == 3);
  auto s1 = stats(twist_family(1, DoubleMode::Keep));
  CHECK(s1.n_minus == 1);
  CHECK(s1.n_plus == 2);
  CHECK(stats(twist_knot(0)).n_plus == 2);
  CHECK_THROWS_AS(resolve_double(trefoil_pd(), 0, Kind::Pos), WrongVertexKind);
  CHECK_THROWS_AS(make_double(twist_family(0, DoubleMode::Keep), kTwistDoubleId), WrongVertexKind);
}

TEST_CASE("moves keep diagrams valid") {
  std::vector<Diagram> ds{unknot(), trefoil_pd(), twist_family(1, DoubleMode::Keep), twist_knot(2),
                          from_pd({{{4, 1, 3, 2}}, {{2, 3, 1, 4}}})};
  for (const auto& d : ds) {
    auto vs = reidemeister_variants(d);
    CHECK(vs.size() >= 4);
    for (const auto& v : vs) {
      CHECK_NOTHROW(validate(v));
      CHECK(components(v) == components(d));
      CHECK(stats(v).n_double == stats(d).n_double);
    }
  }
  auto uv = reidemeister_variants(unknot());
  bool pos = false, neg = false;
  for (auto& v : uv) {
    pos |= stats(v).n_plus == 1 && v.vertices.size() == 1;
    neg |= stats(v).n_minus == 1 && v.vertices.size() == 1;
  }
  CHECK(pos);
  CHECK(neg);
  bool four = false;
  for (auto& v : reidemeister_variants(trefoil_pd())) four |= v.vertices.size() == 4;
  CHECK(four);
  // some R3 must appear for the trefoil after an R2
  bool r3 = false;
  for (auto& v : reidemeister_variants(trefoil_pd())) r3 |= v.vertices.size() == 5;
  CHECK(r3);
}

TEST_CASE("connected sums and special diagrams") {
  Diagram t = trefoil_pd();
  Diagram s = connected_sum(t, t.edge_ids()[0], mirror(t), t.edge_ids()[0]);
  CHECK(s.vertices.size() == 6);
  CHECK(components(s) == 1);
  CHECK(is_planar(s));
  int c0 = -1;
  Diagram red = reducible_diagram(t, t.edge_ids()[1], twist_knot(2), Kind::Pos, c0);
  CHECK(red.vertices.size() == 3 + 4 + 1);
  CHECK(red.vertex(c0).kind == Kind::Pos);
  CHECK(components(red) == 1);
  CHECK_NOTHROW(validate(red));
  Diagram fi = fi_diagram();
  CHECK(stats(fi).n_double == 1);
  CHECK_NOTHROW(validate(fi));
  // vertex relabeling
  Diagram g = twist_family(1, DoubleMode::Keep);
  Diagram p = relabel_vertices(g, {3, 2, 1, 0});
  CHECK(stats(p).n_double == 1);
  CHECK(canonical(canonical(g)) == canonical(g));
}
