#include "cruxkh/frobenius.hpp"

#include <bit>

namespace ckh {

AlgElement alg_mul(const AlgElement& a, const AlgElement& b, const FrobeniusParams& p) {
  // x^2 = h x + t
  i64 xx = checked_mul(a.c1, b.c1);
  AlgElement r;
  r.c0 = checked_add(checked_mul(a.c0, b.c0), checked_mul(xx, p.t));
  r.c1 = checked_add(checked_add(checked_mul(a.c0, b.c1), checked_mul(a.c1, b.c0)), checked_mul(xx, p.h));
  return r;
}

namespace frob {

Matrix unit() { return Matrix::from_dense({{1}, {0}}); }
Matrix counit() { return Matrix::from_dense({{0, 1}}); }

Matrix mu(const FrobeniusParams& p) {
  return Matrix::from_dense({{1, 0, 0, p.t}, {0, 1, 1, p.h}});
}

Matrix delta(const FrobeniusParams& p) {
  return Matrix::from_dense({{-p.h, p.t}, {1, 0}, {1, 0}, {0, 1}});
}

Matrix handle(const FrobeniusParams& p) {
  return Matrix::from_dense({{-p.h, checked_mul(2, p.t)}, {2, p.h}});
}

Matrix twisted_mu(const FrobeniusParams& p) {
  return mu(p) - Matrix::kron(handle(p), counit());
}

Matrix twisted_delta(const FrobeniusParams& p) {
  return delta(p) - Matrix::kron(handle(p), unit());
}

Matrix swap() {
  return Matrix::from_dense({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
}

Matrix phi_local(const FrobeniusParams& p, bool same_circle) {
  if (same_circle) return Matrix(2, 2);
  return twisted_delta(p) * twisted_mu(p);
}

}  // namespace frob

int quantum_degree(unsigned mask, int n) { return n - 2 * std::popcount(mask); }

bool ring_zero(const Matrix& a, const Ring& r) {
  return r.kind == Ring::Kind::PrimeField ? a.reduced_mod(r.p).is_zero() : a.is_zero();
}

bool ring_equal(const Matrix& a, const Matrix& b, const Ring& r) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return ring_zero(a - b, r);
}

std::vector<RelationCheck> verify_bar_natan_relations(const FrobeniusParams& p) {
  using namespace frob;
  const Ring& r = p.ring;
  std::vector<RelationCheck> out;
  out.push_back({"eps eta = 0", ring_zero(counit() * unit(), r)});
  out.push_back({"eps mu Delta eta = 2",
                 ring_equal(counit() * mu(p) * delta(p) * unit(), Matrix::from_dense({{2}}), r)});
  Matrix id = Matrix::identity(2);
  Matrix etaeps = unit() * counit();
  Matrix four = Matrix::kron(id, etaeps) + Matrix::kron(etaeps, id) -
                Matrix::kron(unit(), unit()) * (counit() * mu(p)) -
                (delta(p) * unit()) * Matrix::kron(counit(), counit());
  out.push_back({"4Tu", ring_zero(four, r)});
  return out;
}

void extend_local(const Matrix& local, const std::vector<int>& in_c, const std::vector<int>& out_c,
                  const std::vector<std::pair<int, int>>& passive, int n_src, i64 sign, int row_off,
                  int col_off, std::vector<Triplet>& out) {
  const int ki = static_cast<int>(in_c.size()), ko = static_cast<int>(out_c.size());
  if (local.rows() != (1 << ko) || local.cols() != (1 << ki)) throw DimensionMismatch("extend_local shape");
  const Matrix lt = local.transpose();
  for (unsigned s = 0; s < (1u << n_src); ++s) {
    unsigned col = 0;
    for (int k = 0; k < ki; ++k)
      if (s >> in_c[k] & 1u) col |= 1u << (ki - 1 - k);
    unsigned base = 0;
    for (auto [a, b] : passive)
      if (s >> a & 1u) base |= 1u << b;
    auto rows = lt.row_cols(col);
    auto vals = lt.row_vals(col);
    for (std::size_t e = 0; e < rows.size(); ++e) {
      unsigned tgt = base;
      for (int k = 0; k < ko; ++k)
        if (static_cast<unsigned>(rows[e]) >> (ko - 1 - k) & 1u) tgt |= 1u << out_c[k];
      out.push_back({row_off + static_cast<int>(tgt), col_off + static_cast<int>(s), checked_mul(sign, vals[e])});
    }
  }
}

}  // namespace ckh
