#pragma once

#include <map>
#include <string>

#include "cruxkh/crux.hpp"

namespace ckh {

struct NotDivisible : MathError {
  using MathError::MathError;
};
struct Ungraded : MathError {
  using MathError::MathError;
};
struct HasDoublePoints : DiagramError {
  using DiagramError::DiagramError;
};
struct MultiComponent : DiagramError {
  using DiagramError::DiagramError;
};

// Finitely supported Laurent polynomial with integer coefficients; no zero
// coefficients are stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(i64 coef, int exp);
  static LaurentPoly from(std::initializer_list<std::pair<int, i64>> terms);  // (exp, coef)

  const std::map<int, i64>& terms() const { return c_; }
  i64 coef(int exp) const;
  bool is_zero() const { return c_.empty(); }
  int min_exp() const { return c_.begin()->first; }
  int max_exp() const { return c_.rbegin()->first; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }

  // long division from the top; divisor must have a unit leading coefficient
  void divide(const LaurentPoly& d, LaurentPoly& quot, LaurentPoly& rem) const;
  LaurentPoly exact_div(const LaurentPoly& d) const;  // throws NotDivisible
  // x -> x^k, k != 0
  LaurentPoly substitute(int k) const;
  // x^e -> x^{e / k}; throws unless every exponent is divisible by k
  LaurentPoly compress(int k) const;
  std::string str(const std::string& var = "q") const;

 private:
  void add(int exp, i64 v);
  std::map<int, i64> c_;
};

// sum (-1)^i q^j dim C^{i,j}; equals the homology Euler characteristic
LaurentPoly graded_euler(const ChainComplex& c);
LaurentPoly graded_euler(const HomologyTable& h);

// q + 1/q
LaurentPoly quantum_two();

// Independent state-sum: Kauffman bracket, writhe normalization, then
// A^{2m} -> (-1)^m q^{-m}. Classical diagrams only.
LaurentPoly kauffman_jones(const Diagram& d);

// graded Euler characteristic of the Khovanov complex divided by q + 1/q
LaurentPoly jones(const Diagram& d);

struct CruxJonesReport {
  LaurentPoly lhs;      // jones(d+) - jones(d-)
  LaurentPoly chi_crx;  // graded Euler characteristic of H(crux complex)
  LaurentPoly rhs;      // (q^-4 - q^2)/(q + 1/q) * chi_crx
  LaurentPoly rhs_literal;  // opposite sign, (q^2 - q^-4)/(q + 1/q) * chi_crx
  bool equal = false;
  bool equal_literal = false;
};
CruxJonesReport crux_jones_check(const Diagram& d, const Ring& field);

struct Zeta3Report {
  LaurentPoly v_t;        // Jones polynomial in t = q^2
  LaurentPoly remainder;  // of (V(t) - 1) by t^2 + t + 1
  bool divisible = false;
};
Zeta3Report zeta3_check(const Diagram& d);

}  // namespace ckh
