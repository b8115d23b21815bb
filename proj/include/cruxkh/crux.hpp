#pragma once

#include <map>
#include <string>
#include <vector>

#include "cruxkh/khovanov.hpp"

namespace ckh {

struct ExactnessFailure : MathError {
  using MathError::MathError;
};
struct HomologyMismatch : MathError {
  using MathError::MathError;
};

// Vertices sorted by id with the double point moved last; all crux data uses
// this order, so a multi-index over the crossings is the cube index minus its
// last entry.
Diagram crux_order(const Diagram& d);

// Crux multicomplex over the crossings. Objects carry the V smoothing at the
// double point; labels are the crux complex's own j = deg + |alpha| + w~.
struct CruxComplex {
  Diagram d;  // crux order
  FrobeniusParams p;
  MultiComplex m;
  std::map<MIndex, Smoothing> smoothings;
  std::map<MIndex, CruxInfo> info;
};
CruxComplex crux_complex(const Diagram& d, const FrobeniusParams& p);
ChainComplex crux_total(const CruxComplex& c);

// iota: Crx^alpha -> wide space (column -2); pi: wide space (column 1) -> Crx^alpha
struct IotaPi {
  std::map<MIndex, Matrix> iota, pi;
};
IotaPi iota_pi(const CruxComplex& c);

// One row of the double complex at a fixed crossing resolution. Columns
// -3..2 (Crx, H, V, V, H, Crx) for crux alpha, -2..1 otherwise.
struct RowData {
  MIndex alpha;
  bool crux = false;
  int lo = 0, hi = 0;
  std::map<int, int> dims;
  std::map<int, Matrix> f;      // f[i]: column i -> i + 1
  std::map<int, Matrix> theta;  // theta[i]: column i -> i - 1
  bool normalized = false;      // theta <- theta f theta was needed
};
// throws ExactnessFailure naming the resolution and the failed identity
std::vector<RowData> row_sequences(const Diagram& d, const FrobeniusParams& p);

// Degree -1 map on a total complex: h[n]: C^n -> C^{n-1}.
using Homotopy = std::map<int, Matrix>;

struct XiData {
  CruxComplex crux;
  ChainComplex crx;          // Tot of the crux complex
  MultiComplex x;            // double complex, last direction = columns -3..2
  ChainComplex total;        // Tot(x), acyclic
  TotLayout layout;
  std::map<int, Matrix> dh, delta;  // Tot(x) differential = dh + delta (rows / crossings)
  Homotopy theta;            // row contractions
  std::vector<Homotopy> theta_r;  // theta (-delta theta)^{r-1}, r = 1..5
  Homotopy h;                // contraction of Tot(x): D h + h D = id
  ChainMap xi;               // crx -> crx[4]: f[k]: Crx^k -> Crx^{k+4}
  std::map<int, std::vector<int>> idx_p, idx_m, idx_q;  // positions in Tot(x)^n
};
XiData xi(const Diagram& d, const FrobeniusParams& p);

struct ConeXi {
  XiData data;
  ChainComplex cone;  // Cone(xi: crx[-2] -> crx[2]) with j shifts +2 / -4
  ChainComplex kh;    // columns -2..1 of Tot(x) = [[G]]
  ChainMap alpha;     // cone -> kh
  ChainMap beta;      // kh -> cone
};
// Verifies alpha, beta and the homology identification; throws
// NotAChainMap / HomologyMismatch.
ConeXi cone_xi(const Diagram& d, const FrobeniusParams& p);

struct LesJoint {
  std::string node;  // "crx", "kh" or "crx'"
  int i = 0, j = 0;
  i64 dim = 0, rank_in = 0, rank_out = 0;
  bool exact() const { return dim == rank_in + rank_out; }
};
// H^{n+2,j+4}(crx) -> H^{n,j}(G) -> H^{n-1,j-2}(crx) -> H^{n+3,j+4}(crx) ...
struct LesReport {
  bool graded = false;
  int j_offset = 0;  // j shift applied to the crux complex's own labels
  std::vector<LesJoint> joints;
  HomologyTable kh, crx;
  bool exact() const;
};
// over a field; graded when h = t = 0
LesReport long_exact_report(const Diagram& d, const FrobeniusParams& p);

}  // namespace ckh
