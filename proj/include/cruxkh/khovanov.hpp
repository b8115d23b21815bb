#pragma once

#include <map>
#include <vector>

#include "cruxkh/diagram.hpp"
#include "cruxkh/frobenius.hpp"
#include "cruxkh/mcomplex.hpp"
#include "cruxkh/smoothing.hpp"

namespace ckh {

// Cube of smoothings; multi-index entries follow d.vertices order. Quantum
// labels j = algebra degree + q(alpha) + w~ are attached in every mode.
struct Cube {
  Diagram d;
  FrobeniusParams p;
  MultiComplex m;
  std::map<MIndex, Smoothing> smoothings;
};

struct CubeOptions {
  bool negate_phi = false;  // sign-robustness check
};

// all in-range resolutions of d, lexicographic
std::vector<Resolution> resolutions(const Diagram& d);
// vertices sorted by ascending id
Diagram sorted_by_id(const Diagram& d);

Cube build_cube(const Diagram& d, const FrobeniusParams& p, CubeOptions opt = {});
// Tot of the cube over vertices sorted by id; graded flag follows p.graded()
ChainComplex kh_complex(const Diagram& d, const FrobeniusParams& p, CubeOptions opt = {});
HomologyTable kh_homology(const Diagram& d, const FrobeniusParams& p, CubeOptions opt = {});
// sum over in-range alpha of (-1)^{|alpha|} 2^{#circles}
i64 cube_euler(const Diagram& d);

struct PhiHat {
  ChainComplex minus, plus, singular;  // [[d-]], [[d+]], [[make_double(d-, v)]]
  ChainMap phi;                        // [[d-]] -> [[d+]]
  ChainComplex cone;                   // Cone(phi)
  ChainMap witness;                    // cone -> singular, degreewise invertible
};
// v: vertex id of a negative crossing of d-. Verifies the chain map and the
// witness; throws NotAChainMap otherwise.
PhiHat phi_hat(const Diagram& d_minus, int v, const FrobeniusParams& p, CubeOptions opt = {});

// Tot(cube) = Cone(low -> high) split at vertex v between columns r-1 and r
ConeDecomposition skein_cone(const Diagram& d, int v, int r, const FrobeniusParams& p);

}  // namespace ckh
