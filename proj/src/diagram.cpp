#include "cruxkh/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ckh {

using json = nlohmann::ordered_json;

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Pos: return "pos";
    case Kind::Neg: return "neg";
    default: return "dbl";
  }
}

int Diagram::index_of(int vertex_id) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == vertex_id) return static_cast<int>(i);
  throw DiagramError("no vertex with id " + std::to_string(vertex_id));
}

std::vector<int> Diagram::edge_ids() const {
  std::set<int> s;
  for (const auto& v : vertices)
    for (int e : v.ports) s.insert(e);
  return {s.begin(), s.end()};
}

int Diagram::next_edge_id() const {
  int m = -1;
  for (const auto& v : vertices)
    for (int e : v.ports) m = std::max(m, e);
  return m + 1;
}

int Diagram::next_vertex_id() const {
  int m = -1;
  for (const auto& v : vertices) m = std::max(m, v.id);
  return m + 1;
}

int Diagram::double_points() const {
  return static_cast<int>(std::count_if(vertices.begin(), vertices.end(), [](const Vertex& v) { return v.kind == Kind::Dbl; }));
}

DiagramStats stats(const Diagram& d) {
  DiagramStats s;
  for (const auto& v : d.vertices) {
    if (v.kind == Kind::Pos) ++s.n_plus;
    if (v.kind == Kind::Neg) ++s.n_minus;
    if (v.kind == Kind::Dbl) ++s.n_double;
  }
  s.w_tilde = s.n_double + s.n_plus - s.n_minus;
  return s;
}

namespace {

struct Ends {
  Dart tail{-1, -1};  // out slot
  Dart head{-1, -1};  // in slot
};

std::map<int, Ends> edge_ends(const Diagram& d) {
  std::map<int, Ends> m;
  for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i)
    for (int s = 0; s < 4; ++s) {
      int e = d.vertices[i].at_slot(s);
      (slot_is_in(s) ? m[e].head : m[e].tail) = {i, s};
    }
  return m;
}

using SlotTable = std::vector<std::array<int, 4>>;

SlotTable slot_table(const Diagram& d) {
  SlotTable t(d.vertices.size());
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    for (int s = 0; s < 4; ++s) t[i][s] = d.vertices[i].at_slot(s);
  return t;
}

void apply_table(Diagram& d, const SlotTable& t) {
  for (std::size_t i = 0; i < d.vertices.size(); ++i)
    for (int s = 0; s < 4; ++s) d.vertices[i].ports[slot_to_port(s)] = t[i][s];
}

// Vertex from a counter-clockwise list of (edge, incoming, strand tag).
// Returns the vertex and the strand tag on in_left.
struct CcwEnd {
  int edge;
  bool in;
  int strand;
};

std::pair<Vertex, int> vertex_from_ccw(int id, const std::array<CcwEnd, 4>& c) {
  for (int k = 0; k < 4; ++k) {
    if (!c[k].in || !c[(k + 1) % 4].in) continue;
    Vertex v;
    v.id = id;
    v.ports[InLeft] = c[k].edge;
    v.ports[InRight] = c[(k + 1) % 4].edge;
    v.ports[OutRight] = c[(k + 2) % 4].edge;
    v.ports[OutLeft] = c[(k + 3) % 4].edge;
    if (c[(k + 2) % 4].in || c[(k + 3) % 4].in) break;
    return {v, c[k].strand};
  }
  throw DiagramError("vertex without two adjacent incoming ends");
}

}  // namespace

Dart twin(const Diagram& d, Dart x) {
  const int e = d.vertices[x.v].at_slot(x.slot);
  const bool in = slot_is_in(x.slot);
  for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i)
    for (int s = 0; s < 4; ++s)
      if (slot_is_in(s) != in && d.vertices[i].at_slot(s) == e) return {i, s};
  throw DanglingEdge("edge " + std::to_string(e) + " has one end");
}

std::vector<std::vector<Dart>> faces(const Diagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  auto ends = edge_ends(d);
  auto tw = [&](Dart x) {
    const auto& en = ends.at(d.vertices[x.v].at_slot(x.slot));
    return slot_is_in(x.slot) ? en.tail : en.head;
  };
  std::vector<char> seen(4 * n, 0);
  std::vector<std::vector<Dart>> out;
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < 4; ++s) {
      if (seen[4 * i + s]) continue;
      std::vector<Dart> f;
      Dart x{i, s};
      while (!seen[4 * x.v + x.slot]) {
        seen[4 * x.v + x.slot] = 1;
        f.push_back(x);
        Dart t = tw(x);
        x = {t.v, (t.slot + 1) % 4};
      }
      out.push_back(std::move(f));
    }
  return out;
}

bool is_planar(const Diagram& d) {
  const int n = static_cast<int>(d.vertices.size());
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto ends = edge_ends(d);
  for (auto& [e, en] : ends) parent[find(en.tail.v)] = find(en.head.v);
  int comps = 0;
  for (int i = 0; i < n; ++i) comps += find(i) == i;
  const int f = static_cast<int>(faces(d).size());
  return n - 2 * n + f == 2 * comps;
}

int components(const Diagram& d) {
  auto ends = edge_ends(d);
  std::set<int> seen;
  int count = d.free_loops;
  for (auto& [e0, en0] : ends) {
    if (seen.count(e0)) continue;
    ++count;
    int e = e0;
    while (!seen.count(e)) {
      seen.insert(e);
      Dart h = ends.at(e).head;
      e = d.vertices[h.v].at_slot(h.slot + 2);
    }
  }
  return count;
}

void validate(const Diagram& d) {
  if (d.free_loops < 0) throw MalformedInput("negative free_loops");
  std::set<int> ids;
  std::map<int, int> ins, outs;
  for (const auto& v : d.vertices) {
    if (!ids.insert(v.id).second) throw MalformedInput("duplicate vertex id " + std::to_string(v.id));
    for (int s = 0; s < 4; ++s) {
      int e = v.at_slot(s);
      if (e < 0) throw MalformedInput("negative edge id");
      (slot_is_in(s) ? ins : outs)[e]++;
    }
  }
  for (auto& [e, c] : ins)
    if (c > 1) throw OrientationInconsistent("edge " + std::to_string(e) + " has two in-ports");
  for (auto& [e, c] : outs)
    if (c > 1) throw OrientationInconsistent("edge " + std::to_string(e) + " has two out-ports");
  for (auto& [e, c] : ins)
    if (!outs.count(e)) throw DanglingEdge("edge " + std::to_string(e) + " has no out-port");
  for (auto& [e, c] : outs)
    if (!ins.count(e)) throw DanglingEdge("edge " + std::to_string(e) + " has no in-port");
  if (!is_planar(d)) throw MalformedInput("port orders do not describe a planar diagram");
}

Diagram parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("bad JSON: ") + e.what());
  }
  Diagram d;
  try {
    if (!j.is_object() || !j.contains("vertices")) throw MalformedInput("expected an object with \"vertices\"");
    d.free_loops = j.value("free_loops", 0);
    for (const auto& jv : j.at("vertices")) {
      Vertex v;
      v.id = jv.at("id").get<int>();
      std::string k = jv.at("kind").get<std::string>();
      if (k == "pos") v.kind = Kind::Pos;
      else if (k == "neg") v.kind = Kind::Neg;
      else if (k == "dbl") v.kind = Kind::Dbl;
      else throw MalformedInput("unknown kind '" + k + "'");
      const auto& p = jv.at("ports");
      if (!p.is_array() || p.size() != 4) throw MalformedInput("ports must have 4 entries");
      for (int i = 0; i < 4; ++i) v.ports[i] = p[i].get<int>();
      d.vertices.push_back(v);
    }
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("bad diagram: ") + e.what());
  }
  validate(d);
  return d;
}

std::string serialize(const Diagram& d, bool pretty) {
  json j;
  j["vertices"] = json::array();
  auto vs = d.vertices;
  std::sort(vs.begin(), vs.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (const auto& v : vs) {
    json jv;
    jv["id"] = v.id;
    jv["kind"] = kind_name(v.kind);
    jv["ports"] = v.ports;
    j["vertices"].push_back(jv);
  }
  j["free_loops"] = d.free_loops;
  return pretty ? j.dump(1) : j.dump();
}

Diagram load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void save_file(const Diagram& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize(d, true) << "\n";
}

Diagram canonical(const Diagram& d) {
  Diagram c = d;
  std::sort(c.vertices.begin(), c.vertices.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  auto ends = edge_ends(c);
  std::map<int, int> renum;
  for (int i = 0; i < static_cast<int>(c.vertices.size()); ++i)
    for (int s = 2; s < 4; ++s) {
      int e = c.vertices[i].at_slot(s);
      while (!renum.count(e)) {
        renum[e] = static_cast<int>(renum.size());
        Dart h = ends.at(e).head;
        e = c.vertices[h.v].at_slot(h.slot + 2);
      }
    }
  for (auto& v : c.vertices)
    for (int& e : v.ports) e = renum.at(e);
  return c;
}

Diagram relabel_vertices(const Diagram& d, const std::vector<int>& perm) {
  Diagram c = d;
  for (auto& v : c.vertices) v.id = perm.at(v.id);
  return c;
}

Diagram resolve_double(const Diagram& d, int v, Kind sign) {
  if (sign == Kind::Dbl) throw WrongVertexKind("resolution sign must be pos or neg");
  Diagram c = d;
  auto& x = c.vertices[c.index_of(v)];
  if (x.kind != Kind::Dbl) throw WrongVertexKind("vertex " + std::to_string(v) + " is not a double point");
  x.kind = sign;
  return c;
}

Diagram make_double(const Diagram& d, int v) {
  Diagram c = d;
  auto& x = c.vertices[c.index_of(v)];
  if (x.kind == Kind::Dbl) throw WrongVertexKind("vertex " + std::to_string(v) + " is already a double point");
  x.kind = Kind::Dbl;
  return c;
}

Diagram mirror(const Diagram& d) {
  Diagram c = d;
  for (auto& v : c.vertices)
    if (v.kind != Kind::Dbl) v.kind = v.kind == Kind::Pos ? Kind::Neg : Kind::Pos;
  return c;
}

// ---------------------------------------------------------------- builders

Diagram from_pd(const std::vector<std::array<int, 4>>& pd) {
  const int n = static_cast<int>(pd.size());
  // dir[c]: 0 unknown, 1 over strand enters at position 1 (j), 2 enters at 3 (l)
  std::vector<int> dir(n, 0);
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) occ[pd[c][p]].push_back({c, p});
  for (auto& [e, o] : occ)
    if (o.size() != 2) throw MalformedInput("PD label " + std::to_string(e) + " must occur twice");
  // +1 incoming, -1 outgoing, 0 unknown
  auto status = [&](int c, int p) {
    if (p == 0) return 1;
    if (p == 2) return -1;
    if (!dir[c]) return 0;
    return (p == 1) == (dir[c] == 1) ? 1 : -1;
  };
  auto propagate = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& [e, o] : occ)
        for (int k = 0; k < 2; ++k) {
          auto [c, p] = o[k];
          auto [c2, p2] = o[1 - k];
          int s = status(c, p), s2 = status(c2, p2);
          if (s && s == s2) throw OrientationInconsistent("PD orientation clash at label " + std::to_string(e));
          if (s && !s2) {
            // p2 must have the opposite status
            dir[c2] = ((p2 == 1) == (s == -1)) ? 1 : 2;
            changed = true;
          }
        }
    }
  };
  propagate();
  for (int c = 0; c < n; ++c)
    if (!dir[c]) {
      int j = pd[c][1], l = pd[c][3];
      dir[c] = (l == j + 1 || j > l + 1) ? 1 : 2;
      propagate();
    }
  Diagram d;
  for (int c = 0; c < n; ++c) {
    auto [i, j, k, l] = pd[c];
    Vertex v;
    v.id = c;
    if (dir[c] == 1) {
      v.kind = Kind::Neg;
      v.ports = {i, j, l, k};
    } else {
      v.kind = Kind::Pos;
      v.ports = {l, i, k, j};
    }
    d.vertices.push_back(v);
  }
  validate(d);
  return d;
}

Diagram unknot() { return unlink(1); }

Diagram unlink(int n) {
  Diagram d;
  d.free_loops = n;
  return d;
}

Diagram kink(Kind sign, int variant) { return add_kink(unknot(), -1, sign, variant); }

Diagram add_kink(const Diagram& d, int edge, Kind sign, int variant) {
  Diagram c = d;
  const int x = c.next_edge_id(), loop = x + 1;
  Vertex v;
  v.id = c.next_vertex_id();
  v.kind = sign;
  int in_e, out_e;
  if (edge < 0) {
    if (c.free_loops < 1) throw DiagramError("no free loop to kink");
    c.free_loops--;
    in_e = out_e = x;
  } else {
    auto ends = edge_ends(c);
    auto it = ends.find(edge);
    if (it == ends.end()) throw DiagramError("no edge " + std::to_string(edge));
    Dart h = it->second.head;
    c.vertices[h.v].ports[slot_to_port(h.slot)] = x;
    in_e = edge;
    out_e = x;
  }
  if (variant == 0) v.ports = {in_e, loop, out_e, loop};
  else v.ports = {loop, in_e, loop, out_e};
  c.vertices.push_back(v);
  return c;
}

Diagram r2_move(const Diagram& d, Dart a, Dart b, bool a_over) {
  const int ea = d.vertices[a.v].at_slot(a.slot), eb = d.vertices[b.v].at_slot(b.slot);
  if (ea == eb) throw DiagramError("R2 needs two different edges");
  bool same_face = false;
  for (const auto& f : faces(d))
    if (std::find(f.begin(), f.end(), a) != f.end()) same_face = std::find(f.begin(), f.end(), b) != f.end();
  if (!same_face) throw DiagramError("R2 darts are not on a common face");
  const bool along_e = !slot_is_in(a.slot), along_f = !slot_is_in(b.slot);
  const Dart ta = twin(d, a), tb = twin(d, b);
  Diagram c = d;
  int nx = c.next_edge_id();
  const int e1 = ea, e2 = nx++, e3 = nx++, f1 = eb, f2 = nx++, f3 = nx++;
  auto t = slot_table(c);
  t[ta.v][ta.slot] = e3;
  t[tb.v][tb.slot] = f3;
  apply_table(c, t);
  enum { E = 0, F = 1 };
  const int over = a_over ? E : F;
  auto place = [&](int id, const std::array<CcwEnd, 4>& ends) {
    auto [v, strand] = vertex_from_ccw(id, ends);
    v.kind = strand == over ? Kind::Pos : Kind::Neg;
    c.vertices.push_back(v);
  };
  const int idx = c.next_vertex_id();
  place(idx, {{{f2, !along_f, F}, {e2, along_e, E}, {f1, along_f, F}, {e3, !along_e, E}}});
  place(idx + 1, {{{f3, !along_f, F}, {e2, !along_e, E}, {f2, along_f, F}, {e1, along_e, E}}});
  return c;
}

bool r3_move(const Diagram& d, Dart d0, Diagram& out) {
  std::array<Dart, 3> dd, tt;
  dd[0] = d0;
  for (int i = 0; i < 3; ++i) {
    tt[i] = twin(d, dd[i]);
    Dart nx{tt[i].v, (tt[i].slot + 1) % 4};
    if (i < 2) dd[i + 1] = nx;
    else if (!(nx == d0)) return false;
  }
  std::array<int, 3> vs{dd[0].v, dd[1].v, dd[2].v};
  if (vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2]) return false;
  auto t = slot_table(d);
  std::set<int> internal;
  for (int i = 0; i < 3; ++i) internal.insert(t[dd[i].v][dd[i].slot]);
  for (int i = 0; i < 3; ++i)
    if (internal.count(t[dd[i].v][(dd[i].slot + 2) % 4]) || internal.count(t[tt[i].v][(tt[i].slot + 2) % 4]))
      return false;
  // over side at vertex v_{i+1} = tt[i].v, which meets sides i and i+1
  std::array<int, 3> over{};
  int doubles = 0, dbl_at = -1;
  for (int i = 0; i < 3; ++i) {
    const Vertex& v = d.vertices[tt[i].v];
    const int at = (i + 1) % 3;
    if (v.kind == Kind::Dbl) {
      ++doubles;
      dbl_at = at;
      over[at] = -1;
      continue;
    }
    const bool even = tt[i].slot % 2 == 0;
    over[at] = (even == (v.kind == Kind::Pos)) ? i : (i + 1) % 3;
  }
  // over[k] refers to vertex v_k (sides k-1 and k)
  if (doubles > 1) return false;
  if (doubles == 0) {
    std::set<int> s(over.begin(), over.end());
    if (s.size() == 3) return false;  // cyclic heights
  } else {
    const int third = (dbl_at + 1) % 3;  // the side not through v_dbl
    const bool o1 = over[(dbl_at + 1) % 3] == third, o2 = over[(dbl_at + 2) % 3] == third;
    if (o1 != o2) return false;
  }
  auto nt = t;
  for (int i = 0; i < 3; ++i) {
    const Dart A{dd[i].v, (dd[i].slot + 2) % 4}, B{tt[i].v, (tt[i].slot + 2) % 4};
    const int oe_a = t[A.v][A.slot], oe_b = t[B.v][B.slot], in = t[dd[i].v][dd[i].slot];
    nt[tt[i].v][tt[i].slot] = oe_a;
    nt[dd[i].v][dd[i].slot] = oe_b;
    nt[A.v][A.slot] = in;
    nt[B.v][B.slot] = in;
  }
  out = d;
  apply_table(out, nt);
  return is_planar(out);
}

Diagram connected_sum(const Diagram& d1, int e1, const Diagram& d2, int e2) {
  Diagram c = d1;
  if (d2.vertices.empty()) {
    c.free_loops += d2.free_loops - 1;
    return c;
  }
  if (d1.vertices.empty()) {
    Diagram r = d2;
    r.free_loops += d1.free_loops - 1;
    return r;
  }
  const int voff = d1.next_vertex_id(), eoff = d1.next_edge_id();
  for (auto v : d2.vertices) {
    v.id += voff;
    for (int& e : v.ports) e += eoff;
    c.vertices.push_back(v);
  }
  c.free_loops += d2.free_loops;
  auto ends = edge_ends(c);
  const Dart h1 = ends.at(e1).head, h2 = ends.at(e2 + eoff).head;
  c.vertices[h1.v].ports[slot_to_port(h1.slot)] = e2 + eoff;
  c.vertices[h2.v].ports[slot_to_port(h2.slot)] = e1;
  return c;
}

namespace {

// Closed diagram from a rotation system: conns join (vertex, ccw slot) pairs,
// strands run between opposite slots. Orientation follows a traversal from
// the lowest unvisited slot.
Diagram from_rotation(int nv, const std::vector<std::pair<Dart, Dart>>& conns, const std::vector<Kind>& kinds) {
  std::vector<std::array<Dart, 4>> other(nv);
  for (auto [x, y] : conns) {
    other[x.v][x.slot] = y;
    other[y.v][y.slot] = x;
  }
  std::vector<std::array<int, 4>> edge(nv, {-1, -1, -1, -1});
  std::vector<std::array<bool, 4>> in(nv);
  int next = 0;
  for (int v = 0; v < nv; ++v)
    for (int s = 0; s < 4; ++s) {
      Dart x{v, s};
      while (edge[x.v][x.slot] < 0) {
        Dart y = other[x.v][x.slot];
        edge[x.v][x.slot] = edge[y.v][y.slot] = next++;
        in[x.v][x.slot] = false;
        in[y.v][y.slot] = true;
        x = {y.v, (y.slot + 2) % 4};
      }
    }
  Diagram d;
  for (int v = 0; v < nv; ++v) {
    std::array<CcwEnd, 4> ends;
    for (int s = 0; s < 4; ++s) ends[s] = {edge[v][s], in[v][s], 0};
    Vertex x = vertex_from_ccw(v, ends).first;
    x.kind = kinds[v];
    d.vertices.push_back(x);
  }
  validate(d);
  return d;
}

// a = 0, b = 1, chain t_1..t_n = 2..n+1; chain_kinds for t_k
Diagram twist_layout(const std::vector<Kind>& chain_kinds, Kind clasp) {
  const int n = static_cast<int>(chain_kinds.size());
  const int a = 0, b = 1;
  auto t = [](int k) { return 1 + k; };
  std::vector<std::pair<Dart, Dart>> c;
  c.push_back({{a, 2}, {b, 1}});
  c.push_back({{a, 3}, {b, 0}});
  if (n == 0) {
    c.push_back({{a, 1}, {a, 0}});
    c.push_back({{b, 2}, {b, 3}});
  } else {
    for (int k = 1; k < n; ++k) {
      c.push_back({{t(k), 0}, {t(k + 1), 1}});
      c.push_back({{t(k), 3}, {t(k + 1), 2}});
    }
    c.push_back({{a, 1}, {t(1), 2}});
    c.push_back({{a, 0}, {t(n), 3}});
    c.push_back({{b, 2}, {t(1), 1}});
    c.push_back({{b, 3}, {t(n), 0}});
  }
  std::vector<Kind> kinds{clasp, clasp};
  kinds.insert(kinds.end(), chain_kinds.begin(), chain_kinds.end());
  return from_rotation(n + 2, c, kinds);
}

}  // namespace

Diagram twist_knot(int n) {
  if (n < 0) throw DiagramError("twist count must be >= 0");
  return twist_layout(std::vector<Kind>(n, Kind::Neg), n % 2 ? Kind::Neg : Kind::Pos);
}

Diagram twist_family(int r, DoubleMode mode) {
  if (r < 0) throw DiagramError("r must be >= 0");
  std::vector<Kind> chain(r + 1, Kind::Neg);
  chain[0] = mode == DoubleMode::Keep ? Kind::Dbl : mode == DoubleMode::Positive ? Kind::Pos : Kind::Neg;
  return twist_layout(chain, (r + 1) % 2 ? Kind::Neg : Kind::Pos);
}

Diagram reducible_diagram(const Diagram& outer, int e, const Diagram& inner, Kind kind, int& crossing_id) {
  Diagram k = add_kink(outer, outer.vertices.empty() ? -1 : e, kind, 0);
  crossing_id = k.vertices.back().id;
  const int loop = k.vertices.back().ports[InRight];
  const int ie = inner.vertices.empty() ? -1 : inner.vertices.front().ports[InLeft];
  return connected_sum(k, loop, inner, ie);
}

Diagram fi_diagram(int variant) { return kink(Kind::Dbl, variant); }

std::vector<Diagram> reidemeister_variants(const Diagram& d) {
  std::vector<Diagram> out;
  const int e = d.vertices.empty() ? -1 : d.edge_ids().front();
  if (e >= 0 || d.free_loops > 0)
    for (Kind s : {Kind::Pos, Kind::Neg})
      for (int var : {0, 1}) out.push_back(add_kink(d, e, s, var));
  std::vector<Diagram> r2s;
  int faces_used = 0;
  for (const auto& f : faces(d)) {
    if (faces_used == 2) break;
    const int e0 = d.vertices[f[0].v].at_slot(f[0].slot);
    auto it = std::find_if(f.begin(), f.end(), [&](Dart x) { return d.vertices[x.v].at_slot(x.slot) != e0; });
    if (it == f.end()) continue;
    ++faces_used;
    for (bool over : {true, false}) r2s.push_back(r2_move(d, f[0], *it, over));
  }
  out.insert(out.end(), r2s.begin(), r2s.end());
  auto add_r3 = [&](const Diagram& src, int cap) {
    int added = 0;
    for (const auto& f : faces(src)) {
      if (added == cap) break;
      Diagram r;
      if (f.size() == 3 && r3_move(src, f[0], r)) {
        out.push_back(r);
        ++added;
      }
    }
    return added;
  };
  add_r3(d, 3);
  int extra = 0;
  for (const auto& x : r2s) {
    if (extra >= 2) break;
    extra += add_r3(x, 1);
  }
  for (const auto& x : out) validate(x);
  return out;
}

}  // namespace ckh
