#pragma once

// Brute-force Khovanov complex of a classical diagram (h = t = 0), assembled
// directly from enhanced states without the cube/multicomplex machinery.

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "cruxkh/diagram.hpp"
#include "cruxkh/mcomplex.hpp"

namespace oracle {

using namespace ckh;

struct Loops {
  int n = 0;
  std::map<int, int> of_edge;
  std::vector<std::vector<int>> edges;
};

// bit i of s set: vertex i takes the 1-smoothing
inline Loops loops(const Diagram& d, unsigned s) {
  std::map<int, int> parent;
  for (const auto& v : d.vertices)
    for (int e : v.ports) parent[e] = e;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& v = d.vertices[i];
    // 0-smoothing: oriented for positive crossings, unoriented for negative
    bool oriented = (v.kind == Kind::Pos) != static_cast<bool>(s >> i & 1u);
    auto [a, b, c, e] = std::array<int, 4>{v.ports[0], v.ports[1], v.ports[2], v.ports[3]};
    if (oriented) {
      parent[find(a)] = find(c);
      parent[find(b)] = find(e);
    } else {
      parent[find(a)] = find(b);
      parent[find(c)] = find(e);
    }
  }
  Loops l;
  std::map<int, int> root_label;
  for (auto& [e, p] : parent) {
    int r = find(e);
    if (!root_label.count(r)) {
      root_label[r] = l.n++;
      l.edges.emplace_back();
    }
    l.of_edge[e] = root_label[r];
    l.edges[root_label[r]].push_back(e);
  }
  for (int k = 0; k < d.free_loops; ++k) l.edges.emplace_back(), l.n++;
  return l;
}

inline ChainComplex complex(const Diagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  int np = 0, nm = 0;
  for (const auto& v : d.vertices) (v.kind == Kind::Pos ? np : nm)++;
  std::vector<Loops> L(1u << n);
  for (unsigned s = 0; s < (1u << n); ++s) L[s] = loops(d, s);
  // basis: (s, labelling) ordered by s within each homological degree
  std::map<int, std::vector<std::pair<unsigned, unsigned>>> basis;
  std::map<std::pair<unsigned, unsigned>, int> pos;
  for (unsigned s = 0; s < (1u << n); ++s) {
    const int r = std::popcount(s) - nm;
    for (unsigned lab = 0; lab < (1u << L[s].n); ++lab) {
      pos[{s, lab}] = static_cast<int>(basis[r].size());
      basis[r].push_back({s, lab});
    }
  }
  ChainComplex c;
  c.graded = true;
  for (auto& [r, b] : basis) {
    c.dims[r] = static_cast<int>(b.size());
    for (auto [s, lab] : b) {
      int deg = 0;
      for (int k = 0; k < L[s].n; ++k) deg += (lab >> k & 1u) ? -1 : 1;  // bit = x
      c.q[r].push_back(deg + std::popcount(s) + np - 2 * nm);
    }
  }
  for (auto& [r, b] : basis) {
    if (!basis.count(r + 1)) continue;
    std::vector<Triplet> t;
    for (int col = 0; col < static_cast<int>(b.size()); ++col) {
      auto [s, lab] = b[col];
      for (int i = 0; i < n; ++i) {
        if (s >> i & 1u) continue;
        const unsigned s2 = s | 1u << i;
        const i64 sign = std::popcount(s & ((1u << i) - 1)) % 2 ? -1 : 1;
        const Loops &A = L[s], &B = L[s2];
        // loops of A through vertex i, loops of B through vertex i
        std::vector<int> ta, tb;
        for (int e : d.vertices[i].ports) {
          int x = A.of_edge.at(e), y = B.of_edge.at(e);
          if (std::find(ta.begin(), ta.end(), x) == ta.end()) ta.push_back(x);
          if (std::find(tb.begin(), tb.end(), y) == tb.end()) tb.push_back(y);
        }
        // passive loops by identical edge sets; free loops by index
        unsigned base = 0;
        for (int k = 0; k < A.n; ++k) {
          if (std::find(ta.begin(), ta.end(), k) != ta.end() || !(lab >> k & 1u)) continue;
          int m = A.edges[k].empty() ? B.n - (A.n - k) : B.of_edge.at(A.edges[k][0]);
          base |= 1u << m;
        }
        std::vector<unsigned> outs;
        if (ta.size() == 2) {
          int xs = (lab >> ta[0] & 1u) + (lab >> ta[1] & 1u);
          if (xs == 0) outs = {base};
          else if (xs == 1) outs = {base | 1u << tb[0]};
        } else {
          if (lab >> ta[0] & 1u) outs = {base | 1u << tb[0] | 1u << tb[1]};
          else outs = {base | 1u << tb[0], base | 1u << tb[1]};
        }
        for (unsigned o : outs) t.push_back({pos.at({s2, o}), col, sign});
      }
    }
    c.d[r] = Matrix::from_triplets(c.dims[r + 1], c.dims[r], std::move(t));
  }
  return c;
}

}  // namespace oracle
