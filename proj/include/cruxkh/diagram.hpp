#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ckh {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedInput : DiagramError {
  using DiagramError::DiagramError;
};
struct OrientationInconsistent : DiagramError {
  using DiagramError::DiagramError;
};
struct DanglingEdge : DiagramError {
  using DiagramError::DiagramError;
};
struct WrongVertexKind : DiagramError {
  using DiagramError::DiagramError;
};

enum class Kind { Pos, Neg, Dbl };

// Port order (in_left, in_right, out_left, out_right), strands going up.
// Counter-clockwise around the vertex the slots are
//   0 = in_left, 1 = in_right, 2 = out_right, 3 = out_left,
// and a strand runs between opposite slots.
enum Port { InLeft = 0, InRight = 1, OutLeft = 2, OutRight = 3 };
inline int slot_to_port(int s) { return s < 2 ? s : 5 - s; }
inline int port_to_slot(int p) { return p < 2 ? p : 5 - p; }
inline bool slot_is_in(int s) { return s < 2; }

struct Vertex {
  int id = 0;
  Kind kind = Kind::Pos;
  std::array<int, 4> ports{};

  int at_slot(int s) const { return ports[slot_to_port(s)]; }
  bool operator==(const Vertex&) const = default;
};

struct Diagram {
  std::vector<Vertex> vertices;
  int free_loops = 0;

  int index_of(int vertex_id) const;  // throws if absent
  const Vertex& vertex(int vertex_id) const { return vertices[index_of(vertex_id)]; }
  std::vector<int> edge_ids() const;
  int next_edge_id() const;
  int next_vertex_id() const;
  int double_points() const;
  bool operator==(const Diagram&) const = default;
};

struct DiagramStats {
  int n_plus = 0;
  int n_minus = 0;
  int n_double = 0;
  int w_tilde = 0;
};

DiagramStats stats(const Diagram& d);
// strand cycles through vertices plus free loops
int components(const Diagram& d);

// Throws OrientationInconsistent / DanglingEdge / MalformedInput.
void validate(const Diagram& d);
Diagram parse(const std::string& text);
std::string serialize(const Diagram& d, bool pretty = false);
Diagram load_file(const std::string& path);
void save_file(const Diagram& d, const std::string& path);

// Sort vertices by id and renumber edges 0.. in strand-traversal order.
Diagram canonical(const Diagram& d);
// vertex id i -> perm[i] (perm covers all ids)
Diagram relabel_vertices(const Diagram& d, const std::vector<int>& perm);

Diagram resolve_double(const Diagram& d, int v, Kind sign);
Diagram make_double(const Diagram& d, int v);
Diagram mirror(const Diagram& d);

// ---- planar structure (darts = (vertex index, slot), faces on the right)
struct Dart {
  int v;
  int slot;
  bool operator==(const Dart&) const = default;
};
Dart twin(const Diagram& d, Dart x);
std::vector<std::vector<Dart>> faces(const Diagram& d);
bool is_planar(const Diagram& d);

// ---- constructions
// PD code: X[i,j,k,l] counter-clockwise, i the incoming under strand.
Diagram from_pd(const std::vector<std::array<int, 4>>& pd);
Diagram unknot();
Diagram unlink(int n);
// single kink; variant 0 keeps the outer strand on in_left/out_left
Diagram kink(Kind sign, int variant = 0);
// R1: insert a kink on edge e (a free loop if e < 0)
Diagram add_kink(const Diagram& d, int edge, Kind sign, int variant);
// R2: push edge of dart a across edge of dart b inside their common face
Diagram r2_move(const Diagram& d, Dart a, Dart b, bool a_over);
// R3 on a triangular face given by one of its darts; empty result if invalid
bool r3_move(const Diagram& d, Dart face_dart, Diagram& out);
Diagram connected_sum(const Diagram& d1, int e1, const Diagram& d2, int e2);

enum class DoubleMode { Keep, Positive, Negative };
// G(r): clasp a, b, the double point and r negative twist crossings.
Diagram twist_family(int r, DoubleMode mode);
// D(n): clasp plus n negative twist crossings (D(0) unknot, D(1) trefoil)
Diagram twist_knot(int n);
// vertex id of the double point in twist_family
inline constexpr int kTwistDoubleId = 2;

// D' with a kink on edge e whose loop carries D''; the kink crossing gets id
// `crossing_id` and kind `kind`.
Diagram reducible_diagram(const Diagram& outer, int e, const Diagram& inner, Kind kind, int& crossing_id);
// singular kinked unknot
Diagram fi_diagram(int variant = 0);

// R1 (all four kinks), R2 (both layerings) and valid R3 moves, plus R3
// after an R2 to guarantee triangles.
std::vector<Diagram> reidemeister_variants(const Diagram& d);

std::string kind_name(Kind k);

}  // namespace ckh
