#include "cruxkh/smoothing.hpp"

#include <algorithm>
#include <numeric>

namespace ckh {

int range_lo(Kind k) { return k == Kind::Dbl ? -2 : k == Kind::Neg ? -1 : 0; }
int range_hi(Kind k) { return k == Kind::Neg ? 0 : 1; }
bool in_range(Kind k, int a) { return a >= range_lo(k) && a <= range_hi(k); }

bool in_range(const Diagram& d, const Resolution& alpha) {
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    if (!in_range(d.vertices[i].kind, alpha[i])) return false;
  return true;
}

bool is_v(Kind k, int a) {
  if (k == Kind::Dbl) return a == -1 || a == 0;
  return a == 0;
}

int alpha_q(Kind k, int a) { return k == Kind::Dbl && a < 0 ? a - 1 : a; }

Smoothing smooth_pairing(const Diagram& d, const std::vector<char>& v_smoothing) {
  std::vector<int> ids = d.edge_ids();
  auto dense = [&](int e) { return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), e) - ids.begin()); };
  std::vector<int> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(dense(a))] = find(dense(b)); };
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& p = d.vertices[i].ports;
    if (v_smoothing[i]) {
      unite(p[InLeft], p[OutLeft]);
      unite(p[InRight], p[OutRight]);
    } else {
      unite(p[InLeft], p[InRight]);
      unite(p[OutLeft], p[OutRight]);
    }
  }
  Smoothing s;
  std::vector<int> label(ids.size(), -1);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    int r = find(static_cast<int>(k));
    if (label[r] < 0) label[r] = s.n_circles++;
    s.circle_of_edge[ids[k]] = label[r];
  }
  s.n_circles += d.free_loops;
  return s;
}

Smoothing smooth(const Diagram& d, const Resolution& alpha) {
  if (alpha.size() != d.vertices.size()) throw OutOfRange("resolution size mismatch");
  std::vector<char> v(d.vertices.size());
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    if (!in_range(d.vertices[i].kind, alpha[i])) throw OutOfRange("resolution outside the effective range");
    v[i] = is_v(d.vertices[i].kind, alpha[i]);
  }
  return smooth_pairing(d, v);
}

std::vector<std::pair<int, int>> identity_circles(const Smoothing& src, const Smoothing& tgt) {
  // a circle is carried identically iff its edge set is the same in both
  std::vector<std::vector<int>> es(src.n_circles), et(tgt.n_circles);
  for (auto [e, c] : src.circle_of_edge) es[c].push_back(e);
  for (auto [e, c] : tgt.circle_of_edge) et[c].push_back(e);
  std::vector<std::pair<int, int>> out;
  for (int c = 0; c < src.n_circles; ++c) {
    if (es[c].empty()) continue;
    int t = tgt.circle_of_edge.at(es[c][0]);
    if (et[t] == es[c]) out.push_back({c, t});
  }
  // free loops: the trailing indices without edges
  const int fs = src.n_circles - static_cast<int>(std::count_if(es.begin(), es.end(), [](auto& v) { return !v.empty(); }));
  for (int k = 0; k < fs; ++k) out.push_back({src.n_circles - fs + k, tgt.n_circles - fs + k});
  return out;
}

Saddle saddle_between(const Diagram& d, const Smoothing& src, const Smoothing& tgt, int vi) {
  const Vertex& v = d.vertices[vi];
  auto local = [&](const Smoothing& s) {
    std::vector<int> cs;
    for (int p : {OutLeft, InLeft, InRight, OutRight}) {
      int c = s.circle_at(v, p);
      if (std::find(cs.begin(), cs.end(), c) == cs.end()) cs.push_back(c);
    }
    return cs;
  };
  Saddle sd;
  sd.ins = local(src);
  sd.outs = local(tgt);
  if (sd.ins.size() == 2 && sd.outs.size() == 1) sd.merge = true;
  else if (sd.ins.size() == 1 && sd.outs.size() == 2) sd.merge = false;
  else throw DiagramError("not a saddle");
  sd.passive = identity_circles(src, tgt);
  std::erase_if(sd.passive, [&](auto pr) { return std::find(sd.ins.begin(), sd.ins.end(), pr.first) != sd.ins.end(); });
  return sd;
}

Saddle saddle(const Diagram& d, const Resolution& alpha, int vi) {
  Resolution beta = alpha;
  beta[vi]++;
  const Kind k = d.vertices[vi].kind;
  if (!in_range(k, alpha[vi]) || !in_range(k, beta[vi])) throw OutOfRange("saddle outside the effective range");
  if (is_v(k, alpha[vi]) == is_v(k, beta[vi])) throw OutOfRange("V to V step is not a saddle");
  return saddle_between(d, smooth(d, alpha), smooth(d, beta), vi);
}

Grading gradings(const Diagram& d, const Resolution& alpha) {
  if (!in_range(d, alpha)) throw OutOfRange("resolution outside the effective range");
  Grading g;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    g.i += alpha[i];
    g.q_alpha += alpha_q(d.vertices[i].kind, alpha[i]);
  }
  g.w_tilde = stats(d).w_tilde;
  return g;
}

int double_point_index(const Diagram& d) {
  int idx = -1;
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    if (d.vertices[i].kind == Kind::Dbl) {
      if (idx >= 0) throw NotSingular("more than one double point");
      idx = static_cast<int>(i);
    }
  if (idx < 0) throw NotSingular("no double point");
  return idx;
}

CruxInfo is_crux(const Diagram& d, const Resolution& alpha) {
  const int b0 = double_point_index(d);
  Resolution a = alpha;
  a[b0] = 0;
  CruxInfo info;
  if (!in_range(d, a)) return info;
  Smoothing v = smooth(d, a);
  const Vertex& x = d.vertices[b0];
  if (v.circle_at(x, OutLeft) != v.circle_at(x, OutRight)) return info;
  info.crux = true;
  info.circle = v.circle_at(x, OutLeft);
  a[b0] = 1;
  Smoothing h = smooth(d, a);
  const int top = h.circle_at(x, OutLeft);
  for (auto [e, c] : v.circle_of_edge)
    if (c == info.circle && h.circle_of_edge.at(e) == top) info.twisted_edges.insert(e);
  return info;
}

}  // namespace ckh
