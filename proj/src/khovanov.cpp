#include "cruxkh/khovanov.hpp"

#include <algorithm>

namespace ckh {

std::vector<Resolution> resolutions(const Diagram& d) {
  const std::size_t n = d.vertices.size();
  Resolution a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = range_lo(d.vertices[i].kind);
  std::vector<Resolution> out;
  while (true) {
    out.push_back(a);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (a[i] < range_hi(d.vertices[i].kind)) {
        a[i]++;
        break;
      }
      a[i] = range_lo(d.vertices[i].kind);
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

Diagram sorted_by_id(const Diagram& d) {
  Diagram s = d;
  std::sort(s.vertices.begin(), s.vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  return s;
}

namespace {

std::vector<std::pair<int, int>> all_but(int n, const std::vector<int>& skip) {
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < n; ++c)
    if (std::find(skip.begin(), skip.end(), c) == skip.end()) out.push_back({c, c});
  return out;
}

// Phi on the V smoothing at vertex vi: first factor the circle at out_left
void append_phi(const Diagram& d, const Smoothing& s, int vi, const FrobeniusParams& p, i64 sign, int row_off,
                int col_off, std::vector<Triplet>& out) {
  const Vertex& x = d.vertices[vi];
  const int c1 = s.circle_at(x, OutLeft), c2 = s.circle_at(x, OutRight);
  if (c1 == c2) return;
  extend_local(frob::phi_local(p, false), {c1, c2}, {c1, c2}, all_but(s.n_circles, {c1, c2}), s.n_circles, sign,
               row_off, col_off, out);
}

void append_saddle(const Diagram& d, const Smoothing& src, const Smoothing& tgt, int vi, const FrobeniusParams& p,
                   i64 sign, std::vector<Triplet>& out) {
  Saddle sd = saddle_between(d, src, tgt, vi);
  extend_local(sd.merge ? frob::mu(p) : frob::delta(p), sd.ins, sd.outs, sd.passive, src.n_circles, sign, 0, 0, out);
}

}  // namespace

Cube build_cube(const Diagram& d, const FrobeniusParams& p, CubeOptions opt) {
  validate(d);
  Cube c;
  c.d = d;
  c.p = p;
  c.m.n = static_cast<int>(d.vertices.size());
  c.m.graded = p.graded();
  const int wt = stats(d).w_tilde;
  for (const auto& a : resolutions(d)) {
    Smoothing s = smooth(d, a);
    MObject o;
    o.dim = 1 << s.n_circles;
    int qa = 0;
    for (std::size_t i = 0; i < a.size(); ++i) qa += alpha_q(d.vertices[i].kind, a[i]);
    o.q.resize(o.dim);
    for (int st = 0; st < o.dim; ++st) o.q[st] = quantum_degree(st, s.n_circles) + qa + wt;
    c.m.obj[a] = std::move(o);
    c.smoothings[a] = std::move(s);
  }
  for (const auto& [a, src] : c.smoothings) {
    for (int i = 0; i < c.m.n; ++i) {
      const Kind k = d.vertices[i].kind;
      if (a[i] == range_hi(k)) continue;
      MIndex b = a;
      b[i]++;
      const Smoothing& tgt = c.smoothings.at(b);
      std::vector<Triplet> t;
      if (k == Kind::Dbl && a[i] == -1)
        append_phi(d, src, i, p, opt.negate_phi ? -1 : 1, 0, 0, t);
      else
        append_saddle(d, src, tgt, i, p, k == Kind::Neg ? 1 : -1, t);
      c.m.d[{a, i}] = Matrix::from_triplets(1 << tgt.n_circles, 1 << src.n_circles, std::move(t));
    }
  }
  return c;
}

ChainComplex kh_complex(const Diagram& d, const FrobeniusParams& p, CubeOptions opt) {
  return tot(build_cube(sorted_by_id(d), p, opt).m);
}

HomologyTable kh_homology(const Diagram& d, const FrobeniusParams& p, CubeOptions opt) {
  return homology(kh_complex(d, p, opt), p.ring, p.graded());
}

i64 cube_euler(const Diagram& d) {
  i64 e = 0;
  for (const auto& a : resolutions(d)) {
    int deg = 0;
    for (int x : a) deg += x;
    const i64 v = i64{1} << smooth(d, a).n_circles;
    e += (deg % 2 == 0) ? v : -v;
  }
  return e;
}

PhiHat phi_hat(const Diagram& d_minus, int v, const FrobeniusParams& p, CubeOptions opt) {
  const Diagram dm = sorted_by_id(d_minus);
  const int vi = dm.index_of(v);
  if (dm.vertices[vi].kind != Kind::Neg) throw WrongVertexKind("phi_hat needs a negative crossing");
  Diagram dp = dm;
  dp.vertices[vi].kind = Kind::Pos;
  const Diagram g = make_double(dm, v);
  Cube cm = build_cube(dm, p, opt), cp = build_cube(dp, p, opt), cg = build_cube(g, p, opt);
  TotLayout lm, lp, lg;
  PhiHat r;
  r.minus = tot(cm.m, &lm);
  r.plus = tot(cp.m, &lp);
  r.singular = tot(cg.m, &lg);

  std::map<int, std::vector<Triplet>> trip;
  for (const auto& [a, s] : cm.smoothings) {
    if (a[vi] != 0) continue;
    auto [deg, off] = lm.where.at(a);
    append_phi(dm, s, vi, p, opt.negate_phi ? -1 : 1, lp.where.at(a).second, off, trip[deg]);
  }
  for (auto [deg, n] : r.minus.dims) {
    auto it = trip.find(deg);
    r.phi.f[deg] = Matrix::from_triplets(r.plus.dim(deg), n, it == trip.end() ? std::vector<Triplet>{} : it->second);
  }
  if (!is_chain_map(r.phi, r.minus, r.plus)) throw NotAChainMap("phi_hat");
  r.cone = cone(r.phi, r.minus, r.plus);

  // cone^n = plus^n + minus^{n+1}; minus object alpha -> singular alpha - e_v
  // with sign (-1)^{sum of alpha after v}
  for (auto [n, dim] : r.cone.dims) {
    if (!dim) continue;
    std::vector<Triplet> t;
    for (const auto& a : lp.order[n]) {
      const int from = lp.where.at(a).second, to = lg.where.at(a).second;
      for (int k = 0; k < cp.m.dim(a); ++k) t.push_back({to + k, from + k, 1});
    }
    const int base = r.plus.dim(n);
    for (const auto& a : lm.order[n + 1]) {
      MIndex b = a;
      b[vi]--;
      int sum = 0;
      for (std::size_t i = vi + 1; i < a.size(); ++i) sum += a[i];
      const i64 sg = sum % 2 ? -1 : 1;
      const int from = base + lm.where.at(a).second, to = lg.where.at(b).second;
      for (int k = 0; k < cm.m.dim(a); ++k) t.push_back({to + k, from + k, sg});
    }
    r.witness.f[n] = Matrix::from_triplets(r.singular.dim(n), dim, std::move(t));
    if (r.singular.dim(n) != dim || static_cast<int>(r.witness.f[n].nnz()) != dim)
      throw MathError("phi_hat witness is not a bijection");
  }
  if (!is_chain_map(r.witness, r.cone, r.singular)) throw NotAChainMap("phi_hat cone witness");
  return r;
}

ConeDecomposition skein_cone(const Diagram& d, int v, int r, const FrobeniusParams& p) {
  const Diagram s = sorted_by_id(d);
  const int vi = s.index_of(v);
  const Kind k = s.vertices[vi].kind;
  if (r <= range_lo(k) || r > range_hi(k)) throw OutOfRange("skein cone split outside the row");
  return cone_decomposition(build_cube(s, p).m, vi, r);
}

}  // namespace ckh
