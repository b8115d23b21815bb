#include "cruxkh/jones.hpp"

#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

namespace ckh {

void LaurentPoly::add(int exp, i64 v) {
  if (!v) return;
  i64 s = checked_add(coef(exp), v);
  if (s) c_[exp] = s;
  else c_.erase(exp);
}

LaurentPoly LaurentPoly::monomial(i64 coef, int exp) {
  LaurentPoly p;
  p.add(exp, coef);
  return p;
}

LaurentPoly LaurentPoly::from(std::initializer_list<std::pair<int, i64>> terms) {
  LaurentPoly p;
  for (auto [e, v] : terms) p.add(e, v);
  return p;
}

i64 LaurentPoly::coef(int exp) const {
  auto it = c_.find(exp);
  return it == c_.end() ? 0 : it->second;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly p = *this;
  for (auto [e, v] : o.c_) p.add(e, v);
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p;
  for (auto [e, v] : c_) p.c_[e] = -v;
  return p;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly p;
  for (auto [e1, v1] : c_)
    for (auto [e2, v2] : o.c_) p.add(e1 + e2, checked_mul(v1, v2));
  return p;
}

void LaurentPoly::divide(const LaurentPoly& d, LaurentPoly& quot, LaurentPoly& rem) const {
  if (d.is_zero()) throw NotDivisible("division by zero polynomial");
  const i64 lead = d.c_.rbegin()->second;
  if (lead != 1 && lead != -1) throw NotDivisible("divisor leading coefficient is not a unit");
  const int span = d.max_exp() - d.min_exp();
  quot = LaurentPoly();
  rem = *this;
  while (!rem.is_zero() && rem.max_exp() - rem.min_exp() >= span) {
    const int e = rem.max_exp() - d.max_exp();
    LaurentPoly t = monomial(rem.c_.rbegin()->second * lead, e);
    quot = quot + t;
    rem = rem - t * d;
  }
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& d) const {
  LaurentPoly q, r;
  divide(d, q, r);
  if (!r.is_zero()) throw NotDivisible(str() + " is not divisible by " + d.str());
  return q;
}

LaurentPoly LaurentPoly::substitute(int k) const {
  LaurentPoly p;
  for (auto [e, v] : c_) p.add(e * k, v);
  return p;
}

LaurentPoly LaurentPoly::compress(int k) const {
  LaurentPoly p;
  for (auto [e, v] : c_) {
    if (e % k) throw NotDivisible("exponent " + std::to_string(e) + " not divisible by " + std::to_string(k));
    p.add(e / k, v);
  }
  return p;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream o;
  bool first = true;
  for (auto [e, v] : c_) {
    if (!first) o << (v < 0 ? " - " : " + ");
    else if (v < 0) o << "-";
    first = false;
    const i64 a = v < 0 ? -v : v;
    if (e == 0) {
      o << a;
      continue;
    }
    if (a != 1) o << a << "*";
    o << var;
    if (e != 1) o << "^" << e;
  }
  return o.str();
}

LaurentPoly graded_euler(const ChainComplex& c) {
  if (!c.graded) throw Ungraded("graded Euler characteristic needs h = t = 0");
  LaurentPoly p;
  for (auto [i, n] : c.dims)
    for (int j : c.labels(i)) p = p + LaurentPoly::monomial(i % 2 ? -1 : 1, j);
  return p;
}

LaurentPoly graded_euler(const HomologyTable& h) {
  if (!h.graded) throw Ungraded("graded Euler characteristic needs a bigraded table");
  LaurentPoly p;
  for (auto& [k, g] : h.groups) p = p + LaurentPoly::monomial(k.first % 2 ? -g.free_rank : g.free_rank, k.second);
  return p;
}

LaurentPoly quantum_two() { return LaurentPoly::from({{1, 1}, {-1, 1}}); }

LaurentPoly kauffman_jones(const Diagram& d) {
  if (d.double_points()) throw HasDoublePoints("Kauffman bracket needs a classical diagram");
  const int n = static_cast<int>(d.vertices.size());
  if (n > 24) throw MathError("state sum too large");
  const LaurentPoly loop = LaurentPoly::from({{2, -1}, {-2, -1}});  // -A^2 - A^-2
  std::vector<int> ids = d.edge_ids();
  LaurentPoly bracket;
  for (unsigned s = 0; s < (1u << n); ++s) {
    std::vector<int> parent(ids.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto idx = [&](int e) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), e) - ids.begin()); };
    int a = 0;
    for (int i = 0; i < n; ++i) {
      const Vertex& v = d.vertices[i];
      const bool a_smoothing = !(s >> i & 1u);
      a += a_smoothing;
      // A-smoothing: oriented for positive crossings, unoriented for negative
      const bool oriented = a_smoothing == (v.kind == Kind::Pos);
      if (oriented) {
        parent[find(idx(v.ports[0]))] = find(idx(v.ports[2]));
        parent[find(idx(v.ports[1]))] = find(idx(v.ports[3]));
      } else {
        parent[find(idx(v.ports[0]))] = find(idx(v.ports[1]));
        parent[find(idx(v.ports[2]))] = find(idx(v.ports[3]));
      }
    }
    int loops = d.free_loops;
    for (int k = 0; k < static_cast<int>(ids.size()); ++k) loops += find(k) == k;
    LaurentPoly term = LaurentPoly::monomial(1, a - (n - a));
    for (int k = 1; k < loops; ++k) term = term * loop;
    bracket = bracket + term;
  }
  const DiagramStats st = stats(d);
  const int w = st.n_plus - st.n_minus;
  LaurentPoly f = bracket * LaurentPoly::monomial(w % 2 ? -1 : 1, -3 * w);
  LaurentPoly v;
  for (auto [e, c] : f.terms()) {
    if (e % 2) throw MathError("odd power of A in the normalized bracket");
    const int m = e / 2;
    v = v + LaurentPoly::monomial(m % 2 ? -c : c, -m);
  }
  return v;
}

LaurentPoly jones(const Diagram& d) {
  if (d.double_points()) throw HasDoublePoints("jones needs a classical diagram");
  return graded_euler(kh_complex(d, {0, 0, Ring::Q()})).exact_div(quantum_two());
}

CruxJonesReport crux_jones_check(const Diagram& d, const Ring& field) {
  const Diagram s = sorted_by_id(d);
  const int v = s.vertices[double_point_index(s)].id;
  CruxJonesReport r;
  r.lhs = jones(resolve_double(s, v, Kind::Pos)) - jones(resolve_double(s, v, Kind::Neg));
  const FrobeniusParams p{0, 0, field};
  r.chi_crx = graded_euler(homology(crux_total(crux_complex(s, p)), field, true));
  const LaurentPoly factor = LaurentPoly::from({{-4, 1}, {2, -1}});
  LaurentPoly q, rem;
  (factor * r.chi_crx).divide(quantum_two(), q, rem);
  if (rem.is_zero()) {
    r.rhs = q;
    r.rhs_literal = -q;
  }
  r.equal = quantum_two() * r.lhs == factor * r.chi_crx;
  r.equal_literal = quantum_two() * r.lhs == -(factor * r.chi_crx);
  return r;
}

Zeta3Report zeta3_check(const Diagram& d) {
  if (components(d) != 1) throw MultiComponent("zeta3 check needs a knot");
  Zeta3Report r;
  r.v_t = jones(d).compress(2);
  LaurentPoly q;
  (r.v_t - LaurentPoly::monomial(1, 0)).divide(LaurentPoly::from({{2, 1}, {1, 1}, {0, 1}}), q, r.remainder);
  r.divisible = r.remainder.is_zero();
  return r;
}

}  // namespace ckh
