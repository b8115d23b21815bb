#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ckh {

using i64 = std::int64_t;
using BigInt = mpz_class;

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : MathError {
  using MathError::MathError;
};
struct CompositionNonzero : MathError {
  using MathError::MathError;
};
struct OverflowError : MathError {
  using MathError::MathError;
};

bool is_prime(i64 n);

struct Ring {
  enum class Kind { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  i64 p = 0;

  static Ring Z() { return {}; }
  static Ring Q() { return {Kind::Rationals, 0}; }
  static Ring Fp(i64 p);
  // "z", "q", "fp:3"
  static Ring parse(const std::string& s);

  bool is_field() const { return kind != Kind::Integers; }
  std::string name() const;
  bool operator==(const Ring&) const = default;
};

inline i64 mod_p(i64 a, i64 p) {
  i64 r = a % p;
  return r < 0 ? r + p : r;
}

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

struct Triplet {
  int row;
  int col;
  i64 val;
};

struct Entry {
  int col;
  i64 val;
};

// Sparse integer matrix, CSR, no stored zeros. Columns are the source basis.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);

  static Matrix from_triplets(int rows, int cols, std::vector<Triplet> t);
  static Matrix from_dense(const std::vector<std::vector<i64>>& rows_data);
  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return val_.size(); }
  bool is_zero() const { return val_.empty(); }

  std::span<const int> row_cols(int r) const {
    return {ci_.data() + rp_[r], ci_.data() + rp_[r + 1]};
  }
  std::span<const i64> row_vals(int r) const {
    return {val_.data() + rp_[r], val_.data() + rp_[r + 1]};
  }
  i64 at(int r, int c) const;

  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const { return scaled(-1); }
  Matrix scaled(i64 s) const;
  Matrix transpose() const;
  Matrix reduced_mod(i64 p) const;
  bool operator==(const Matrix& o) const;
  bool equal_mod(const Matrix& o, i64 p) const;

  Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
  std::vector<std::vector<i64>> dense() const;
  std::vector<Triplet> triplets() const;

  // first factor most significant in the basis order
  static Matrix kron(const Matrix& a, const Matrix& b);
  // [a b] and [a; b]
  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> rp_{0};
  std::vector<int> ci_;
  std::vector<i64> val_;
};

struct HomologyGroup {
  i64 free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, divisibility chain

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const HomologyGroup& o) const;
  std::string str() const;  // e.g. "Z^2+Z/2"
  std::string torsion_str() const;  // e.g. "[2,4]"
};

// Nonzero invariant factors d1 | d2 | ... of an integer matrix.
std::vector<BigInt> smith_normal_form(const Matrix& m);

i64 rank_mod_p(const Matrix& m, i64 p);
i64 rank_over(const Matrix& m, const Ring& ring);

// Rank + invariant factors (> 1) of a single matrix over a ring; torsion empty over fields.
struct RankInfo {
  i64 rank = 0;
  std::vector<BigInt> torsion;
};
RankInfo rank_info(const Matrix& m, const Ring& ring);

// ker(d_out)/im(d_in); d_in: C^{i-1} -> C^i, d_out: C^i -> C^{i+1}.
HomologyGroup homology_at(const Matrix& d_in, const Matrix& d_out, const Ring& ring);
HomologyGroup homology_from(i64 dim, const RankInfo& in, const RankInfo& out);

// Rank of the map induced on homology at one degree by f: X^n -> Y^n, given
// dx_out: X^n -> X^{n+1} and dy_in: Y^{n-1} -> Y^n. Field rings only.
i64 induced_rank(const Matrix& f, const Matrix& dx_out, const Matrix& dy_in, const Ring& ring);

}  // namespace ckh
