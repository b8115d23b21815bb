#include "cruxkh/exactalg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace ckh {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::Fp(i64 p) {
  if (!is_prime(p)) throw MathError("modulus " + std::to_string(p) + " is not prime");
  return {Kind::PrimeField, p};
}

Ring Ring::parse(const std::string& s) {
  if (s == "z" || s == "Z") return Z();
  if (s == "q" || s == "Q") return Q();
  if (s.rfind("fp:", 0) == 0 || s.rfind("Fp:", 0) == 0) {
    std::size_t used = 0;
    i64 p = 0;
    try {
      p = std::stoll(s.substr(3), &used);
    } catch (const std::exception&) {
      throw MathError("bad ring '" + s + "'");
    }
    if (used != s.size() - 3) throw MathError("bad ring '" + s + "'");
    return Fp(p);
  }
  throw MathError("bad ring '" + s + "' (expected z, q or fp:<p>)");
}

std::string Ring::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    default: return "F" + std::to_string(p);
  }
}

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in add");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in mul");
  return r;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), rp_(rows + 1, 0) {}

Matrix Matrix::from_triplets(int rows, int cols, std::vector<Triplet> t) {
  Matrix m(rows, cols);
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t i = 0;
  while (i < t.size()) {
    const int r = t[i].row, c = t[i].col;
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw DimensionMismatch("triplet index out of range");
    i64 v = 0;
    while (i < t.size() && t[i].row == r && t[i].col == c) v = checked_add(v, t[i++].val);
    if (v != 0) {
      m.ci_.push_back(c);
      m.val_.push_back(v);
      m.rp_[r + 1]++;
    }
  }
  for (int r = 0; r < rows; ++r) m.rp_[r + 1] += m.rp_[r];
  return m;
}

Matrix Matrix::from_dense(const std::vector<std::vector<i64>>& rows_data) {
  const int r = static_cast<int>(rows_data.size());
  const int c = r ? static_cast<int>(rows_data[0].size()) : 0;
  std::vector<Triplet> t;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows_data[i].size()) != c) throw DimensionMismatch("ragged dense matrix");
    for (int j = 0; j < c; ++j)
      if (rows_data[i][j]) t.push_back({i, j, rows_data[i][j]});
  }
  return from_triplets(r, c, std::move(t));
}

Matrix Matrix::identity(int n) {
  std::vector<Triplet> t;
  t.reserve(n);
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1});
  return from_triplets(n, n, std::move(t));
}

i64 Matrix::at(int r, int c) const {
  auto cs = row_cols(r);
  auto it = std::lower_bound(cs.begin(), cs.end(), c);
  if (it == cs.end() || *it != c) return 0;
  return val_[rp_[r] + (it - cs.begin())];
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
  Matrix m(rows_, o.cols_);
  std::vector<i64> acc(o.cols_, 0);
  std::vector<char> used(o.cols_, 0);
  std::vector<int> touched;
  for (int r = 0; r < rows_; ++r) {
    touched.clear();
    for (int k = rp_[r]; k < rp_[r + 1]; ++k) {
      const int mid = ci_[k];
      const i64 a = val_[k];
      for (int l = o.rp_[mid]; l < o.rp_[mid + 1]; ++l) {
        const int c = o.ci_[l];
        if (!used[c]) {
          used[c] = 1;
          touched.push_back(c);
        }
        acc[c] = checked_add(acc[c], checked_mul(a, o.val_[l]));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      if (acc[c] != 0) {
        m.ci_.push_back(c);
        m.val_.push_back(acc[c]);
      }
      acc[c] = 0;
      used[c] = 0;
    }
    m.rp_[r + 1] = static_cast<int>(m.ci_.size());
  }
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  Matrix m(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    int a = rp_[r], b = o.rp_[r];
    const int ae = rp_[r + 1], be = o.rp_[r + 1];
    while (a < ae || b < be) {
      int c;
      i64 v;
      if (b >= be || (a < ae && ci_[a] < o.ci_[b])) {
        c = ci_[a];
        v = val_[a++];
      } else if (a >= ae || o.ci_[b] < ci_[a]) {
        c = o.ci_[b];
        v = o.val_[b++];
      } else {
        c = ci_[a];
        v = checked_add(val_[a++], o.val_[b++]);
      }
      if (v != 0) {
        m.ci_.push_back(c);
        m.val_.push_back(v);
      }
    }
    m.rp_[r + 1] = static_cast<int>(m.ci_.size());
  }
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-1); }

Matrix Matrix::scaled(i64 s) const {
  if (s == 0) return Matrix(rows_, cols_);
  Matrix m = *this;
  for (auto& v : m.val_) v = checked_mul(v, s);
  return m;
}

Matrix Matrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < rows_; ++r)
    for (int k = rp_[r]; k < rp_[r + 1]; ++k) t.push_back({ci_[k], r, val_[k]});
  return from_triplets(cols_, rows_, std::move(t));
}

Matrix Matrix::reduced_mod(i64 p) const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < rows_; ++r)
    for (int k = rp_[r]; k < rp_[r + 1]; ++k) {
      i64 v = mod_p(val_[k], p);
      if (v) t.push_back({r, ci_[k], v});
    }
  return from_triplets(rows_, cols_, std::move(t));
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && rp_ == o.rp_ && ci_ == o.ci_ && val_ == o.val_;
}

bool Matrix::equal_mod(const Matrix& o, i64 p) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return (*this - o).reduced_mod(p).is_zero();
}

Matrix Matrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> cmap(cols_, -1);
  for (int j = 0; j < static_cast<int>(cols.size()); ++j) cmap[cols[j]] = j;
  std::vector<Triplet> t;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    const int r = rows[i];
    for (int k = rp_[r]; k < rp_[r + 1]; ++k)
      if (cmap[ci_[k]] >= 0) t.push_back({i, cmap[ci_[k]], val_[k]});
  }
  return from_triplets(static_cast<int>(rows.size()), static_cast<int>(cols.size()), std::move(t));
}

std::vector<std::vector<i64>> Matrix::dense() const {
  std::vector<std::vector<i64>> d(rows_, std::vector<i64>(cols_, 0));
  for (int r = 0; r < rows_; ++r)
    for (int k = rp_[r]; k < rp_[r + 1]; ++k) d[r][ci_[k]] = val_[k];
  return d;
}

std::vector<Triplet> Matrix::triplets() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < rows_; ++r)
    for (int k = rp_[r]; k < rp_[r + 1]; ++k) t.push_back({r, ci_[k], val_[k]});
  return t;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  std::vector<Triplet> t;
  for (const auto& x : a.triplets())
    for (const auto& y : b.triplets())
      t.push_back({x.row * b.rows_ + y.row, x.col * b.cols_ + y.col, checked_mul(x.val, y.val)});
  return from_triplets(a.rows_ * b.rows_, a.cols_ * b.cols_, std::move(t));
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw DimensionMismatch("hcat row mismatch");
  auto t = a.triplets();
  for (auto x : b.triplets()) t.push_back({x.row, x.col + a.cols_, x.val});
  return from_triplets(a.rows_, a.cols_ + b.cols_, std::move(t));
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw DimensionMismatch("vcat column mismatch");
  auto t = a.triplets();
  for (auto x : b.triplets()) t.push_back({x.row + a.rows_, x.col, x.val});
  return from_triplets(a.rows_ + b.rows_, a.cols_, std::move(t));
}

// ---------------------------------------------------------- elimination

namespace {

// Scalar policies for sparse elimination. Every policy eliminates with
// unit pivots only; over a prime field every nonzero is a unit.
struct ModP {
  using T = i64;
  i64 p;
  bool unit(T a) const { return a != 0; }
  T inv(T a) const {
    i64 r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  }
  T factor(T a, T pivot_inv) const { return a * pivot_inv % p; }
  T sub_mul(T a, T f, T b) const { return mod_p(a - f * b % p, p); }
  bool zero(T a) const { return a == 0; }
};

struct IntChecked {
  using T = i64;
  bool unit(T a) const { return a == 1 || a == -1; }
  T inv(T a) const { return a; }
  T factor(T a, T pivot_inv) const { return checked_mul(a, pivot_inv); }
  T sub_mul(T a, T f, T b) const { return checked_add(a, -checked_mul(f, b)); }
  bool zero(T a) const { return a == 0; }
};

struct IntBig {
  using T = BigInt;
  bool unit(const T& a) const { return a == 1 || a == -1; }
  T inv(const T& a) const { return a; }
  T factor(const T& a, const T& pivot_inv) const { return a * pivot_inv; }
  T sub_mul(const T& a, const T& f, const T& b) const { return a - f * b; }
  bool zero(const T& a) const { return a == 0; }
};

template <class P>
struct Eliminator {
  using T = typename P::T;
  using Row = std::vector<std::pair<int, T>>;
  P pol;
  std::vector<Row> rows;
  std::vector<char> active;
  std::vector<std::vector<int>> colrows;
  std::vector<int> colcount;
  i64 pivots = 0;

  Eliminator(P p, int nrows, int ncols) : pol(p), rows(nrows), active(nrows, 1), colrows(ncols), colcount(ncols, 0) {}

  void load(const Matrix& m, auto conv) {
    for (int r = 0; r < m.rows(); ++r) {
      auto cs = m.row_cols(r);
      auto vs = m.row_vals(r);
      for (std::size_t k = 0; k < cs.size(); ++k) {
        T v = conv(vs[k]);
        if (pol.zero(v)) continue;
        rows[r].push_back({cs[k], v});
        colrows[cs[k]].push_back(r);
        colcount[cs[k]]++;
      }
    }
  }

  void run() {
    using QE = std::pair<std::size_t, int>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> heap;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
      if (!rows[r].empty()) heap.push({rows[r].size(), r});
    std::vector<int> stamp(rows.size(), -1);
    int round = 0;
    Row merged;
    while (!heap.empty()) {
      auto [len, r] = heap.top();
      heap.pop();
      if (!active[r] || rows[r].size() != len || len == 0) continue;
      int best = -1;
      for (std::size_t k = 0; k < rows[r].size(); ++k)
        if (pol.unit(rows[r][k].second) && (best < 0 || colcount[rows[r][k].first] < colcount[rows[r][best].first]))
          best = static_cast<int>(k);
      if (best < 0) continue;  // parked until modified
      const int c = rows[r][best].first;
      const T pinv = pol.inv(rows[r][best].second);
      ++round;
      stamp[r] = round;
      const Row& prow = rows[r];
      for (int r2 : colrows[c]) {
        if (!active[r2] || stamp[r2] == round) continue;
        stamp[r2] = round;
        Row& row2 = rows[r2];
        auto it = std::lower_bound(row2.begin(), row2.end(), c, [](const auto& e, int col) { return e.first < col; });
        if (it == row2.end() || it->first != c) continue;
        const T f = pol.factor(it->second, pinv);
        merged.clear();
        std::size_t a = 0, b = 0;
        while (a < row2.size() || b < prow.size()) {
          if (b >= prow.size() || (a < row2.size() && row2[a].first < prow[b].first)) {
            merged.push_back(row2[a++]);
          } else if (a >= row2.size() || prow[b].first < row2[a].first) {
            T v = pol.sub_mul(T(0), f, prow[b].second);
            const int col = prow[b].first;
            ++b;
            if (!pol.zero(v)) {
              merged.push_back({col, v});
              colcount[col]++;
              colrows[col].push_back(r2);
            }
          } else {
            T v = pol.sub_mul(row2[a].second, f, prow[b].second);
            const int col = row2[a].first;
            ++a;
            ++b;
            if (!pol.zero(v))
              merged.push_back({col, v});
            else
              colcount[col]--;
          }
        }
        row2.swap(merged);
        heap.push({row2.size(), r2});
      }
      for (const auto& e : prow) colcount[e.first]--;
      active[r] = 0;
      rows[r].clear();
      colrows[c].clear();
      ++pivots;
    }
  }

  // Remaining nonzero rows as a dense block (compressed columns).
  std::vector<std::vector<BigInt>> residual(auto to_big) const {
    std::vector<int> cols;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (active[r])
        for (const auto& e : rows[r]) cols.push_back(e.first);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::vector<std::vector<BigInt>> d;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!active[r] || rows[r].empty()) continue;
      std::vector<BigInt> row(cols.size(), 0);
      for (const auto& e : rows[r]) {
        auto pos = std::lower_bound(cols.begin(), cols.end(), e.first) - cols.begin();
        row[pos] = to_big(e.second);
      }
      d.push_back(std::move(row));
    }
    return d;
  }
};

std::vector<BigInt> to_invariant_factors(std::vector<BigInt> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = gcd(d[i], d[j]);
      BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

// Rank and the absolute value of a nonzero maximal minor, by fraction-free
// (Bareiss) elimination; intermediate entries are minors, so sizes stay
// polynomial.
std::pair<std::size_t, BigInt> bareiss(std::vector<std::vector<BigInt>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  BigInt prev = 1;
  std::size_t k = 0;
  for (; k < m && k < n; ++k) {
    std::size_t pr = m, pc = n;
    for (std::size_t i = k; i < m && pr == m; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j] != 0) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m) break;
    std::swap(a[k], a[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return {k, abs(prev)};
}

// Diagonal of the lattice rows(a) + D Z^n, computed with all entries reduced
// mod D; every diagonal entry divides D.
std::vector<BigInt> diagonal_mod(std::vector<std::vector<BigInt>> a, const BigInt& D) {
  const std::size_t n = a.empty() ? 0 : a[0].size();
  for (auto& row : a)
    for (auto& v : row) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t());
  auto reduce = [&](BigInt& v) { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), D.get_mpz_t()); };
  std::vector<BigInt> diag;
  BigInt g, s, t, x, y;
  for (std::size_t k = 0; k < n; ++k) {
    if (a.size() <= k) a.emplace_back(n, BigInt(0));
    bool clean = false;
    while (!clean) {
      clean = true;
      // rows: a[k][k] <- gcd of the column
      for (std::size_t i = k + 1; i < a.size(); ++i) {
        if (a[i][k] == 0) continue;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[k][k].get_mpz_t(), a[i][k].get_mpz_t());
        const BigInt p = a[k][k] / g, q = a[i][k] / g;
        for (std::size_t j = k; j < n; ++j) {
          x = s * a[k][j] + t * a[i][j];
          y = q * a[k][j] - p * a[i][j];
          reduce(x);
          reduce(y);
          a[k][j].swap(x);
          a[i][j].swap(y);
        }
      }
      // columns: same on row k; may refill column k
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[k][k].get_mpz_t(), a[k][j].get_mpz_t());
        const BigInt p = a[k][k] / g, q = a[k][j] / g;
        for (std::size_t i = k; i < a.size(); ++i) {
          x = s * a[i][k] + t * a[i][j];
          y = q * a[i][k] - p * a[i][j];
          reduce(x);
          reduce(y);
          a[i][k].swap(x);
          a[i][j].swap(y);
          if (i > k && a[i][k] != 0) clean = false;
        }
      }
    }
    diag.push_back(gcd(a[k][k], D));  // gcd(0, D) = D
  }
  return diag;
}

// Nonzero invariant factors of a dense integer matrix.
std::vector<BigInt> dense_invariants(const std::vector<std::vector<BigInt>>& a) {
  const auto [r, D] = bareiss(a);
  if (r == 0) return {};
  auto d = to_invariant_factors(diagonal_mod(a, D));
  d.resize(r);  // the remaining n - r factors are D itself
  return d;
}

template <class P>
std::pair<i64, std::vector<std::vector<BigInt>>> eliminate_int(const Matrix& m, P pol) {
  Eliminator<P> e(pol, m.rows(), m.cols());
  e.load(m, [](i64 v) { return typename P::T(v); });
  e.run();
  auto res = e.residual([](const typename P::T& v) { return BigInt(v); });
  return {e.pivots, std::move(res)};
}

std::pair<i64, std::vector<std::vector<BigInt>>> eliminate_z(const Matrix& m) {
  try {
    return eliminate_int(m, IntChecked{});
  } catch (const OverflowError&) {
    return eliminate_int(m, IntBig{});
  }
}

}  // namespace

std::vector<BigInt> smith_normal_form(const Matrix& m) {
  auto [units, res] = eliminate_z(m);
  auto d = dense_invariants(res);
  std::vector<BigInt> out(static_cast<std::size_t>(units), BigInt(1));
  out.insert(out.end(), d.begin(), d.end());
  return to_invariant_factors(std::move(out));
}

i64 rank_mod_p(const Matrix& m, i64 p) {
  Eliminator<ModP> e(ModP{p}, m.rows(), m.cols());
  e.load(m, [p](i64 v) { return mod_p(v, p); });
  e.run();
  return e.pivots;
}

RankInfo rank_info(const Matrix& m, const Ring& ring) {
  RankInfo info;
  if (ring.kind == Ring::Kind::PrimeField) {
    info.rank = rank_mod_p(m, ring.p);
    return info;
  }
  auto inv = smith_normal_form(m);
  info.rank = static_cast<i64>(inv.size());
  if (ring.kind == Ring::Kind::Integers)
    for (const auto& d : inv)
      if (d > 1) info.torsion.push_back(d);
  return info;
}

i64 rank_over(const Matrix& m, const Ring& ring) { return rank_info(m, ring).rank; }

bool HomologyGroup::operator==(const HomologyGroup& o) const {
  return free_rank == o.free_rank && torsion == o.torsion;
}

std::string HomologyGroup::torsion_str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i].get_str();
  os << ']';
  return os.str();
}

std::string HomologyGroup::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "R^" << free_rank;
    first = false;
  }
  for (const auto& t : torsion) {
    os << (first ? "" : "+") << "Z/" << t.get_str();
    first = false;
  }
  return os.str();
}

HomologyGroup homology_from(i64 dim, const RankInfo& in, const RankInfo& out) {
  HomologyGroup h;
  h.free_rank = dim - in.rank - out.rank;
  if (h.free_rank < 0) throw MathError("negative homology rank: composition is not zero");
  h.torsion = in.torsion;
  return h;
}

HomologyGroup homology_at(const Matrix& d_in, const Matrix& d_out, const Ring& ring) {
  if (d_in.rows() != d_out.cols()) throw DimensionMismatch("d_in target != d_out source");
  Matrix comp = d_out * d_in;
  bool nonzero = ring.kind == Ring::Kind::PrimeField ? !comp.reduced_mod(ring.p).is_zero() : !comp.is_zero();
  if (nonzero) throw CompositionNonzero("d_out * d_in != 0");
  return homology_from(d_in.rows(), rank_info(d_in, ring), rank_info(d_out, ring));
}

i64 induced_rank(const Matrix& f, const Matrix& dx_out, const Matrix& dy_in, const Ring& ring) {
  if (!ring.is_field()) throw MathError("induced_rank needs a field");
  if (f.cols() != dx_out.cols() || f.rows() != dy_in.rows()) throw DimensionMismatch("induced_rank shapes");
  Matrix top = Matrix::hcat(f, dy_in);
  Matrix bottom = Matrix::hcat(dx_out, Matrix(dx_out.rows(), dy_in.cols()));
  Matrix F = Matrix::vcat(top, bottom);
  return rank_over(F, ring) - rank_over(dx_out, ring) - rank_over(dy_in, ring);
}

}  // namespace ckh
