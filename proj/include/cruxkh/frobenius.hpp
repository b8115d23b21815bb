#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cruxkh/exactalg.hpp"

namespace ckh {

// C_{h,t} = k[x]/(x^2 - h x - t). Basis order (1, x); on tensor powers the
// first factor is the most significant bit and a set bit means "x".
struct FrobeniusParams {
  i64 h = 0;
  i64 t = 0;
  Ring ring = Ring::Z();

  bool graded() const { return h == 0 && t == 0; }
};

struct AlgElement {
  i64 c0 = 0;  // coefficient of 1
  i64 c1 = 0;  // coefficient of x
  bool operator==(const AlgElement&) const = default;
};

AlgElement alg_mul(const AlgElement& a, const AlgElement& b, const FrobeniusParams& p);

namespace frob {

Matrix unit();                                  // 2x1
Matrix counit();                                // 1x2
Matrix mu(const FrobeniusParams& p);            // 2x4
Matrix delta(const FrobeniusParams& p);         // 4x2
Matrix handle(const FrobeniusParams& p);        // kappa = 2x - h, 2x2
Matrix twisted_mu(const FrobeniusParams& p);    // first factor = module
Matrix twisted_delta(const FrobeniusParams& p); // first factor = module, second newborn
Matrix swap();                                  // 4x4 factor swap
// Delta~ mu~ on two distinct circles (4x4); the zero map A -> A if same_circle.
Matrix phi_local(const FrobeniusParams& p, bool same_circle);

}  // namespace frob

// Euler degree of a basis monomial on n circles: +1 per "1", -1 per "x".
int quantum_degree(unsigned mask, int n);

struct RelationCheck {
  std::string name;
  bool pass;
};
// eps eta = 0, eps mu Delta eta = 2, 4Tu.
std::vector<RelationCheck> verify_bar_natan_relations(const FrobeniusParams& p);

// Matrix equality in the ring of p (mod p for prime fields).
bool ring_equal(const Matrix& a, const Matrix& b, const Ring& r);
bool ring_zero(const Matrix& a, const Ring& r);

// Extend a local map on some circles to whole state spaces.
//   local: 2^|out_c| x 2^|in_c| matrix, factor order given by in_c / out_c
//   passive: (source circle, target circle) pairs carried by the identity
// Appends sign * (extended map) entries as triplets (row = target state).
void extend_local(const Matrix& local, const std::vector<int>& in_c, const std::vector<int>& out_c,
                  const std::vector<std::pair<int, int>>& passive, int n_src, i64 sign, int row_off,
                  int col_off, std::vector<Triplet>& out);

}  // namespace ckh
