#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cruxkh/jones.hpp"

using namespace ckh;

static Diagram trefoil() { return from_pd({{{1, 4, 2, 5}}, {{3, 6, 4, 1}}, {{5, 2, 6, 3}}}); }
static Diagram hopf() { return from_pd({{{4, 1, 3, 2}}, {{2, 3, 1, 4}}}); }
static Diagram fig8() { return from_pd({{{4, 2, 5, 1}}, {{8, 6, 1, 5}}, {{6, 3, 7, 4}}, {{2, 7, 3, 8}}}); }

static LaurentPoly right_trefoil_q() { return LaurentPoly::from({{2, 1}, {6, 1}, {8, -1}}); }

// classical Jones polynomials in t of the knots reached by twist_knot(n)
static const std::vector<LaurentPoly>& twist_table() {
  static const std::vector<LaurentPoly> t{
      LaurentPoly::from({{0, 1}}),
      LaurentPoly::from({{-4, -1}, {-3, 1}, {-1, 1}}),
      LaurentPoly::from({{-2, 1}, {-1, -1}, {0, 1}, {1, -1}, {2, 1}}),
      LaurentPoly::from({{-6, -1}, {-5, 1}, {-4, -1}, {-3, 2}, {-2, -1}, {-1, 1}}),
      LaurentPoly::from({{-4, 1}, {-3, -1}, {-2, 1}, {-1, -2}, {0, 2}, {1, -1}, {2, 1}}),
      LaurentPoly::from({{-8, -1}, {-7, 1}, {-6, -1}, {-5, 2}, {-4, -2}, {-3, 2}, {-2, -1}, {-1, 1}}),
      LaurentPoly::from({{-6, 1}, {-5, -1}, {-4, 1}, {-3, -2}, {-2, 2}, {-1, -2}, {0, 2}, {1, -1}, {2, 1}}),
  };
  return t;
}

TEST_CASE("Laurent polynomial arithmetic") {
  LaurentPoly a = LaurentPoly::from({{1, 1}, {-1, 1}});
  CHECK((a * a).str() == "q^-2 + 2 + q^2");
  CHECK((a * a).exact_div(a) == a);
  CHECK_THROWS_AS(LaurentPoly::from({{0, 1}}).exact_div(a), NotDivisible);
  CHECK((a - a).is_zero());
  CHECK(a.substitute(2).compress(2) == a);
  CHECK(LaurentPoly::from({{3, 0}}).terms().empty());
}

TEST_CASE("graded Euler characteristic") {
  CHECK(graded_euler(kh_complex(unknot(), {})) == quantum_two());
  CHECK(graded_euler(kh_complex(unlink(2), {})) == quantum_two() * quantum_two());
  CHECK(graded_euler(kh_complex(kink(Kind::Pos), {})) == quantum_two());
  ChainComplex c = kh_complex(trefoil(), {});
  CHECK(graded_euler(shift(c, 1)) == -graded_euler(c));
  CHECK(graded_euler(direct_sum(c, c)) == graded_euler(c) + graded_euler(c));
  CHECK(graded_euler(homology(c, Ring::Q(), true)) == graded_euler(c));
  CHECK_THROWS_AS(graded_euler(kh_complex(unknot(), {1, 0, Ring::Z()})), Ungraded);
}

TEST_CASE("Kauffman oracle and Khovanov Euler characteristic agree") {
  CHECK(kauffman_jones(unknot()) == LaurentPoly::monomial(1, 0));
  Diagram rt = stats(trefoil()).n_plus == 3 ? trefoil() : mirror(trefoil());
  CHECK(kauffman_jones(rt) == right_trefoil_q());
  CHECK(kauffman_jones(mirror(rt)) == right_trefoil_q().substitute(-1));
  for (const auto& d : {unknot(), unlink(2), kink(Kind::Neg), hopf(), mirror(hopf()), trefoil(), mirror(trefoil()),
                        fig8(), twist_knot(3), twist_knot(4)})
    CHECK(jones(d) == kauffman_jones(d));
  CHECK_THROWS_AS(jones(twist_family(0, DoubleMode::Keep)), HasDoublePoints);
}

TEST_CASE("twist knots reach the expected knot types") {
  const auto& tab = twist_table();
  CHECK(jones(twist_knot(1)).compress(2) == tab[1]);  // left trefoil
  for (int n = 0; n < static_cast<int>(tab.size()); ++n) {
    LaurentPoly v = kauffman_jones(twist_knot(n)).compress(2);
    CHECK((v == tab[n] || v == tab[n].substitute(-1)));
  }
}

TEST_CASE("Jones invariance under Reidemeister moves") {
  for (const auto& d : {trefoil(), hopf(), fig8()}) {
    LaurentPoly ref = jones(d);
    for (const auto& v : reidemeister_variants(d)) CHECK(jones(v) == ref);
  }
}

TEST_CASE("crux skein identity") {
  Diagram f = fig8();
  int c0 = 0;
  Diagram red = reducible_diagram(trefoil(), 1, twist_knot(2), Kind::Neg, c0);
  red = make_double(red, c0);
  std::vector<Diagram> ds{twist_family(0, DoubleMode::Keep), twist_family(1, DoubleMode::Keep),
                          twist_family(2, DoubleMode::Keep), make_double(f, f.vertices[1].id), fi_diagram(), red};
  for (const auto& d : ds)
    for (Ring r : {Ring::Q(), Ring::Fp(2), Ring::Fp(3)}) {
      CruxJonesReport rep = crux_jones_check(d, r);
      CHECK(rep.equal);
      CHECK(rep.rhs == rep.lhs);
      if (!rep.chi_crx.is_zero()) CHECK(!rep.equal_literal);
    }
  CruxJonesReport rr = crux_jones_check(red, Ring::Q());
  CHECK(rr.lhs.is_zero());
  CHECK(rr.chi_crx.is_zero());
}

TEST_CASE("value at a primitive cube root of unity") {
  for (const auto& d : {unknot(), trefoil(), mirror(trefoil()), fig8(), twist_knot(3), twist_knot(5)}) {
    Zeta3Report z = zeta3_check(d);
    CHECK(z.divisible);
  }
  CHECK(zeta3_check(unknot()).v_t == LaurentPoly::monomial(1, 0));
  CHECK_THROWS_AS(zeta3_check(hopf()), MultiComponent);
}
