#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cruxkh/diagram.hpp"

namespace ckh {

struct OutOfRange : DiagramError {
  using DiagramError::DiagramError;
};
struct NotSingular : DiagramError {
  using DiagramError::DiagramError;
};

// alpha is indexed like d.vertices
using Resolution = std::vector<int>;

int range_lo(Kind k);
int range_hi(Kind k);
bool in_range(Kind k, int a);
bool in_range(const Diagram& d, const Resolution& alpha);
// V smoothing (in_left-out_left, in_right-out_right) versus wide
bool is_v(Kind k, int a);
int alpha_q(Kind k, int a);

struct Smoothing {
  int n_circles = 0;
  std::map<int, int> circle_of_edge;  // free loops take the last indices

  int circle_at(const Vertex& v, int port) const { return circle_of_edge.at(v.ports[port]); }
};

// per-vertex pairing: v_smoothing[i] says whether vertex i is V-smoothed
Smoothing smooth_pairing(const Diagram& d, const std::vector<char>& v_smoothing);
Smoothing smooth(const Diagram& d, const Resolution& alpha);

struct Saddle {
  bool merge = false;
  // merge: ins = {c1, c2} -> outs = {c}; split: ins = {c} -> outs = {c1, c2}
  std::vector<int> ins, outs;
  // circles of the source carried unchanged: (source, target)
  std::vector<std::pair<int, int>> passive;
};

// Elementary cobordism between smoothings that differ by the pairing at vertex
// index vi (source -> target).
Saddle saddle_between(const Diagram& d, const Smoothing& src, const Smoothing& tgt, int vi);
Saddle saddle(const Diagram& d, const Resolution& alpha, int vi);

// circles of src mapped identically onto tgt (same edge sets)
std::vector<std::pair<int, int>> identity_circles(const Smoothing& src, const Smoothing& tgt);

struct Grading {
  int i = 0;
  int q_alpha = 0;
  int w_tilde = 0;
};
Grading gradings(const Diagram& d, const Resolution& alpha);

struct CruxInfo {
  bool crux = false;
  int circle = -1;             // crux circle in the V smoothing
  std::set<int> twisted_edges; // edges of the crux circle on the arc leaving out_left
};
int double_point_index(const Diagram& d);  // throws NotSingular unless exactly one
// alpha given on all vertices; the double point entry is ignored (taken as 0)
CruxInfo is_crux(const Diagram& d, const Resolution& alpha);

}  // namespace ckh
