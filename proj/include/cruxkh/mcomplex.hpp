#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cruxkh/exactalg.hpp"

namespace ckh {

struct NotAChainMap : MathError {
  using MathError::MathError;
};
struct CommutationFailure : MathError {
  using MathError::MathError;
};

// Cochain complex of free modules; d(i): C^i -> C^{i+1}. Optional quantum
// labels per basis vector (graded mode).
struct ChainComplex {
  std::map<int, int> dims;
  std::map<int, Matrix> d;
  std::map<int, std::vector<int>> q;
  bool graded = false;

  int dim(int i) const;
  Matrix diff(int i) const;
  const std::vector<int>& labels(int i) const;
  int lo() const;
  int hi() const;
  bool empty() const;
  i64 total_rank() const;
  // shapes, d^2 = 0 and (if graded) label preservation; throws MathError
  void check() const;
};

struct ChainMap {
  std::map<int, Matrix> f;  // f(i): X^i -> Y^i
  Matrix at(int i, const ChainComplex& x, const ChainComplex& y) const;
};

bool is_chain_map(const ChainMap& f, const ChainComplex& x, const ChainComplex& y);
// (C[k])^n = C^{n+k}; differential negated for odd k
ChainComplex shift(const ChainComplex& c, int k);
// quantum labels shifted by s
ChainComplex shift_q(const ChainComplex& c, int s);
// Cone(f)^n = Y^n + X^{n+1}, d = [[d_Y, f], [0, -d_X]]
ChainComplex cone(const ChainMap& f, const ChainComplex& x, const ChainComplex& y);
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& x, const ChainComplex& y,
                 const ChainComplex& z);
ChainMap identity_map(const ChainComplex& c);

// Homology table keyed by (i, j); j = 0 for ungraded computations. Only
// nonzero groups are stored.
struct HomologyTable {
  bool graded = false;
  std::map<std::pair<int, int>, HomologyGroup> groups;

  bool operator==(const HomologyTable& o) const { return graded == o.graded && groups == o.groups; }
  bool is_zero() const { return groups.empty(); }
  HomologyGroup at(int i, int j = 0) const;
  // collapse the j grading
  HomologyTable ungraded() const;
  std::string str() const;
};

HomologyTable homology(const ChainComplex& c, const Ring& r, bool graded);
// ranks of the induced map per (i, j) over a field
std::map<std::pair<int, int>, i64> induced_ranks(const ChainMap& f, const ChainComplex& x, const ChainComplex& y,
                                                 const Ring& r, bool graded);

// ------------------------------------------------------------ multicomplexes

using MIndex = std::vector<int>;

int sign_rho(const MIndex& alpha, int a);     // (-1)^{sum_{a' > a} alpha(a')}
int sign_lambda(const MIndex& alpha, int a);  // (-1)^{sum_{a' < a} alpha(a')}

struct MObject {
  int dim = 0;
  std::vector<int> q;
};

// S = {0 < 1 < ... < n-1}; d[(alpha, a)]: X^alpha -> X^{alpha + e_a}
struct MultiComplex {
  int n = 0;
  bool graded = false;
  std::map<MIndex, MObject> obj;
  std::map<std::pair<MIndex, int>, Matrix> d;

  int dim(const MIndex& a) const;
  Matrix diff(const MIndex& a, int dir) const;  // zero of the right shape if absent
  void check() const;                           // throws CommutationFailure
};

// Position of each object inside the total complex.
struct TotLayout {
  std::map<MIndex, std::pair<int, int>> where;      // alpha -> (degree, offset)
  std::map<int, std::vector<MIndex>> order;         // degree -> objects in order
};

ChainComplex tot(const MultiComplex& m, TotLayout* layout = nullptr);
MultiComplex truncate_ge(const MultiComplex& m, int a0, int r);
MultiComplex truncate_le(const MultiComplex& m, int a0, int r);
// X[alpha0]^alpha = X^{alpha + alpha0}, d_a scaled by (-1)^{alpha0(a)}
MultiComplex shift(const MultiComplex& m, const MIndex& alpha0);

struct ConeDecomposition {
  ChainComplex low;   // Tot(truncate_le(m, a0, r-1))[-1]
  ChainComplex high;  // Tot(truncate_ge(m, a0, r))
  ChainMap phi;       // low -> high
  ChainComplex cone;  // Cone(phi)
  ChainComplex total; // Tot(m)
  ChainMap witness;   // cone -> total, degreewise invertible
};
// Tot(m) = Cone(phi) with an explicit permutation witness (verified).
ConeDecomposition cone_decomposition(const MultiComplex& m, int a0, int r);

}  // namespace ckh
