#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "cruxkh/smoothing.hpp"

using namespace ckh;

static Diagram trefoil() { return from_pd({{{1, 4, 2, 5}}, {{3, 6, 4, 1}}, {{5, 2, 6, 3}}}); }

static void each_resolution(const Diagram& d, const std::function<void(const Resolution&)>& f) {
  Resolution a(d.vertices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) return f(a);
    for (int x = range_lo(d.vertices[i].kind); x <= range_hi(d.vertices[i].kind); ++x) {
      a[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

static std::vector<Resolution> crux_set(const Diagram& d) {
  std::vector<Resolution> out;
  const int b0 = double_point_index(d);
  each_resolution(d, [&](const Resolution& a) {
    if (a[b0] == 0 && is_crux(d, a).crux) out.push_back(a);
  });
  return out;
}

TEST_CASE("smooth examples") {
  CHECK(smooth(unknot(), {}).n_circles == 1);
  CHECK(smooth(trefoil(), {0, 0, 0}).n_circles == 2);
  CHECK(smooth(trefoil(), {-1, -1, -1}).n_circles == 3);
  CHECK_THROWS_AS(smooth(trefoil(), {1, 0, 0}), OutOfRange);
  Diagram g0 = twist_family(0, DoubleMode::Keep);
  Resolution z(g0.vertices.size(), 0);
  CHECK(smooth(g0, z).n_circles >= 1);
}

TEST_CASE("saddles") {
  Diagram k = kink(Kind::Pos);
  auto s = saddle(k, {0}, 0);
  CHECK(s.merge);
  CHECK(s.ins.size() == 2);
  CHECK(smooth(k, {1}).n_circles == 1);
  Diagram hopf = mirror(from_pd({{{4, 1, 3, 2}}, {{2, 3, 1, 4}}}));
  CHECK(saddle(hopf, {0, 0}, 0).merge);
  Diagram fi = fi_diagram();
  CHECK_THROWS_AS(saddle(fi, {-1}, 0), OutOfRange);
  // circle counts of adjacent resolutions differ by one
  for (const auto& d : {trefoil(), twist_family(1, DoubleMode::Keep), twist_knot(3)})
    each_resolution(d, [&](const Resolution& a) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        Resolution b = a;
        b[i]++;
        Kind kd = d.vertices[i].kind;
        if (!in_range(kd, b[i]) || is_v(kd, a[i]) == is_v(kd, b[i])) continue;
        int diff = smooth(d, b).n_circles - smooth(d, a).n_circles;
        CHECK((diff == 1 || diff == -1));
        auto sd = saddle(d, a, static_cast<int>(i));
        CHECK(sd.passive.size() + sd.ins.size() == static_cast<std::size_t>(smooth(d, a).n_circles));
      }
    });
}

TEST_CASE("gradings") {
  CHECK(gradings(trefoil(), {-1, 0, -1}).q_alpha == -2);
  Diagram fi = fi_diagram();
  CHECK(gradings(fi, {-1}).q_alpha == -2);
  CHECK(gradings(fi, {-2}).q_alpha == -3);
  auto g = gradings(kink(Kind::Pos), {1});
  CHECK(g.w_tilde == 1);
  CHECK(g.i == 1);
  CHECK(g.q_alpha == 1);
}

TEST_CASE("crux sets") {
  CHECK_THROWS_AS(is_crux(trefoil(), {0, 0, 0}), NotSingular);
  for (int r = 0; r <= 5; ++r) {
    Diagram g = twist_family(r, DoubleMode::Keep);
    auto cs = crux_set(g);
    CHECK(cs.size() == 3);
    for (const auto& a : cs)
      for (std::size_t i = 3; i < a.size(); ++i) CHECK(a[i] == -1);
    // relabeling ids does not change the count
    std::vector<int> perm(g.vertices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(perm.size() - 1 - i);
    CHECK(crux_set(relabel_vertices(g, perm)).size() == 3);
  }
  int c0 = -1;
  Diagram red = reducible_diagram(trefoil(), 1, twist_knot(2), Kind::Pos, c0);
  CHECK(crux_set(make_double(red, c0)).empty());
  // twisted edges: nonempty proper subset of the crux circle
  Diagram g1 = twist_family(1, DoubleMode::Keep);
  for (const auto& a : crux_set(g1)) {
    auto info = is_crux(g1, a);
    CHECK(!info.twisted_edges.empty());
    const Vertex& b0 = g1.vertex(kTwistDoubleId);
    CHECK(info.twisted_edges.count(b0.ports[OutLeft]));
    CHECK(!info.twisted_edges.count(b0.ports[InLeft]));
  }
}
