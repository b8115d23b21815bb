#include "cruxkh/mcomplex.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ckh {

int ChainComplex::dim(int i) const {
  auto it = dims.find(i);
  return it == dims.end() ? 0 : it->second;
}

Matrix ChainComplex::diff(int i) const {
  auto it = d.find(i);
  if (it != d.end()) return it->second;
  return Matrix(dim(i + 1), dim(i));
}

const std::vector<int>& ChainComplex::labels(int i) const {
  static const std::vector<int> none;
  auto it = q.find(i);
  return it == q.end() ? none : it->second;
}

int ChainComplex::lo() const {
  for (auto [i, n] : dims)
    if (n) return i;
  return 0;
}

int ChainComplex::hi() const {
  for (auto it = dims.rbegin(); it != dims.rend(); ++it)
    if (it->second) return it->first;
  return -1;
}

bool ChainComplex::empty() const { return total_rank() == 0; }

i64 ChainComplex::total_rank() const {
  i64 s = 0;
  for (auto [i, n] : dims) s += n;
  return s;
}

void ChainComplex::check() const {
  for (auto& [i, m] : d) {
    if (m.rows() != dim(i + 1) || m.cols() != dim(i))
      throw DimensionMismatch("differential " + std::to_string(i) + " has the wrong shape");
    if (!(diff(i + 1) * m).is_zero()) throw CompositionNonzero("d^2 != 0 at degree " + std::to_string(i));
    if (graded) {
      const auto& qs = labels(i);
      const auto& qt = labels(i + 1);
      for (const auto& t : m.triplets())
        if (qs[t.col] != qt[t.row]) throw MathError("differential does not preserve the quantum grading");
    }
  }
  if (graded)
    for (auto [i, n] : dims)
      if (static_cast<int>(labels(i).size()) != n) throw MathError("missing quantum labels");
}

Matrix ChainMap::at(int i, const ChainComplex& x, const ChainComplex& y) const {
  auto it = f.find(i);
  if (it != f.end()) return it->second;
  return Matrix(y.dim(i), x.dim(i));
}

namespace {

std::set<int> degrees(const ChainComplex& a) {
  std::set<int> s;
  for (auto [i, n] : a.dims)
    if (n) s.insert(i);
  return s;
}

}  // namespace

bool is_chain_map(const ChainMap& f, const ChainComplex& x, const ChainComplex& y) {
  std::set<int> s = degrees(x);
  for (int i : degrees(y)) s.insert(i);
  for (auto& [i, m] : f.f)
    if (m.rows() != y.dim(i) || m.cols() != x.dim(i)) return false;
  for (int i : s) {
    for (int k : {i - 1, i}) {
      Matrix lhs = f.at(k + 1, x, y) * x.diff(k);
      Matrix rhs = y.diff(k) * f.at(k, x, y);
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

ChainComplex shift(const ChainComplex& c, int k) {
  ChainComplex s;
  s.graded = c.graded;
  for (auto [i, n] : c.dims) s.dims[i - k] = n;
  for (auto& [i, m] : c.d) s.d[i - k] = k % 2 ? -m : m;
  for (auto& [i, l] : c.q) s.q[i - k] = l;
  return s;
}

ChainComplex shift_q(const ChainComplex& c, int sh) {
  ChainComplex s = c;
  for (auto& [i, l] : s.q)
    for (int& x : l) x += sh;
  return s;
}

ChainComplex cone(const ChainMap& f, const ChainComplex& x, const ChainComplex& y) {
  if (!is_chain_map(f, x, y)) throw NotAChainMap("cone of a non-chain map");
  ChainComplex c;
  c.graded = x.graded && y.graded;
  std::set<int> s = degrees(y);
  for (int i : degrees(x)) s.insert(i - 1);
  for (int n : s) {
    c.dims[n] = y.dim(n) + x.dim(n + 1);
    if (c.graded) {
      auto l = y.labels(n);
      const auto& lx = x.labels(n + 1);
      l.insert(l.end(), lx.begin(), lx.end());
      c.q[n] = l;
    }
  }
  for (int n : s) {
    Matrix top = Matrix::hcat(y.diff(n), f.at(n + 1, x, y));
    Matrix bottom = Matrix::hcat(Matrix(x.dim(n + 2), y.dim(n)), -x.diff(n + 1));
    Matrix m = Matrix::vcat(top, bottom);
    if (m.rows() && m.cols()) c.d[n] = m;
  }
  return c;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex c;
  c.graded = a.graded && b.graded;
  std::set<int> s = degrees(a);
  for (int i : degrees(b)) s.insert(i);
  for (int n : s) {
    c.dims[n] = a.dim(n) + b.dim(n);
    if (c.graded) {
      auto l = a.labels(n);
      const auto& lb = b.labels(n);
      l.insert(l.end(), lb.begin(), lb.end());
      c.q[n] = l;
    }
    Matrix top = Matrix::hcat(a.diff(n), Matrix(a.dim(n + 1), b.dim(n)));
    Matrix bottom = Matrix::hcat(Matrix(b.dim(n + 1), a.dim(n)), b.diff(n));
    Matrix m = Matrix::vcat(top, bottom);
    if (m.rows() && m.cols()) c.d[n] = m;
  }
  return c;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& x, const ChainComplex& y,
                 const ChainComplex& z) {
  ChainMap h;
  for (int i : degrees(x)) {
    Matrix m = g.at(i, y, z) * f.at(i, x, y);
    if (!m.is_zero()) h.f[i] = m;
  }
  (void)z;
  return h;
}

ChainMap identity_map(const ChainComplex& c) {
  ChainMap f;
  for (auto [i, n] : c.dims)
    if (n) f.f[i] = Matrix::identity(n);
  return f;
}

HomologyGroup HomologyTable::at(int i, int j) const {
  auto it = groups.find({i, j});
  return it == groups.end() ? HomologyGroup{} : it->second;
}

HomologyTable HomologyTable::ungraded() const {
  HomologyTable t;
  for (auto& [ij, g] : groups) {
    auto& h = t.groups[{ij.first, 0}];
    h.free_rank += g.free_rank;
    h.torsion.insert(h.torsion.end(), g.torsion.begin(), g.torsion.end());
  }
  // recombine the summed torsion into invariant factors
  for (auto& [i, h] : t.groups) {
    auto& v = h.torsion;
    std::sort(v.begin(), v.end());
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        BigInt g = gcd(v[a], v[b]);
        BigInt l = v[a] / g * v[b];
        v[a] = g;
        v[b] = l;
      }
    std::erase_if(v, [](const BigInt& x) { return x == 1; });
  }
  return t;
}

std::string HomologyTable::str() const {
  std::ostringstream os;
  for (auto& [ij, g] : groups) os << ij.first << '\t' << ij.second << '\t' << g.free_rank << '\t' << g.torsion_str() << '\n';
  return os.str();
}

namespace {

// basis indices of each label value
std::map<int, std::vector<int>> split_by_label(const std::vector<int>& l, int n, bool graded) {
  std::map<int, std::vector<int>> m;
  for (int k = 0; k < n; ++k) m[graded ? l[k] : 0].push_back(k);
  return m;
}

Matrix block(const Matrix& d, const std::map<int, std::vector<int>>& rows, const std::map<int, std::vector<int>>& cols,
             int j) {
  static const std::vector<int> none;
  auto r = rows.find(j);
  auto c = cols.find(j);
  const auto& rr = r == rows.end() ? none : r->second;
  const auto& cc = c == cols.end() ? none : c->second;
  if (rr.size() == static_cast<std::size_t>(d.rows()) && cc.size() == static_cast<std::size_t>(d.cols())) return d;
  return d.submatrix(rr, cc);
}

}  // namespace

HomologyTable homology(const ChainComplex& c, const Ring& r, bool graded) {
  if (graded && !c.graded) throw MathError("graded homology of an ungraded complex");
  HomologyTable t;
  t.graded = graded;
  std::set<int> ds = degrees(c);
  std::map<int, std::map<int, std::vector<int>>> split;
  std::set<int> all = ds;
  for (int i : ds) all.insert(i - 1), all.insert(i + 1);
  for (int i : all) split[i] = split_by_label(c.labels(i), c.dim(i), graded);
  // rank info of d^i restricted to label j
  std::map<std::pair<int, int>, RankInfo> rk;
  auto info = [&](int i, int j) -> const RankInfo& {
    auto key = std::make_pair(i, j);
    auto it = rk.find(key);
    if (it != rk.end()) return it->second;
    auto dit = c.d.find(i);
    Matrix zero = dit == c.d.end() ? c.diff(i) : Matrix();
    const Matrix& m = dit == c.d.end() ? zero : dit->second;
    return rk[key] = rank_info(block(m, split[i + 1], split[i], j), r);
  };
  for (int i : ds)
    for (auto& [j, idx] : split[i]) {
      HomologyGroup h = homology_from(static_cast<i64>(idx.size()), info(i - 1, j), info(i, j));
      if (!h.is_zero()) t.groups[{i, j}] = h;
    }
  return t;
}

std::map<std::pair<int, int>, i64> induced_ranks(const ChainMap& f, const ChainComplex& x, const ChainComplex& y,
                                                 const Ring& r, bool graded) {
  std::map<std::pair<int, int>, i64> out;
  for (int i : degrees(x)) {
    if (!y.dim(i)) continue;
    auto sx = split_by_label(x.labels(i), x.dim(i), graded);
    auto sx1 = split_by_label(x.labels(i + 1), x.dim(i + 1), graded);
    auto sy = split_by_label(y.labels(i), y.dim(i), graded);
    auto sy0 = split_by_label(y.labels(i - 1), y.dim(i - 1), graded);
    Matrix fi = f.at(i, x, y), dxo = x.diff(i), dyi = y.diff(i - 1);
    for (auto& [j, idx] : sx) {
      if (!sy.count(j)) continue;
      Matrix fb = block(fi, sy, sx, j);
      Matrix xo = block(dxo, sx1, sx, j);
      Matrix yi = block(dyi, sy, sy0, j);
      i64 k = induced_rank(fb, xo, yi, r);
      if (k) out[{i, j}] = k;
    }
  }
  return out;
}

// ------------------------------------------------------------ multicomplexes

int sign_rho(const MIndex& alpha, int a) {
  int s = 0;
  for (std::size_t k = a + 1; k < alpha.size(); ++k) s += alpha[k];
  return s % 2 ? -1 : 1;
}

int sign_lambda(const MIndex& alpha, int a) {
  int s = 0;
  for (int k = 0; k < a; ++k) s += alpha[k];
  return s % 2 ? -1 : 1;
}

int MultiComplex::dim(const MIndex& a) const {
  auto it = obj.find(a);
  return it == obj.end() ? 0 : it->second.dim;
}

Matrix MultiComplex::diff(const MIndex& a, int dir) const {
  auto it = d.find({a, dir});
  if (it != d.end()) return it->second;
  MIndex b = a;
  b[dir]++;
  return Matrix(dim(b), dim(a));
}

void MultiComplex::check() const {
  for (auto& [key, m] : d) {
    MIndex b = key.first;
    b[key.second]++;
    if (m.rows() != dim(b) || m.cols() != dim(key.first)) throw CommutationFailure("differential shape mismatch");
  }
  for (auto& [alpha, o] : obj) {
    if (!o.dim) continue;
    for (int a = 0; a < n; ++a) {
      MIndex ea = alpha;
      ea[a]++;
      Matrix da = diff(alpha, a);
      if (!(diff(ea, a) * da).is_zero()) throw CommutationFailure("d_a d_a != 0");
      for (int b = a + 1; b < n; ++b) {
        MIndex eb = alpha;
        eb[b]++;
        if (!(diff(ea, b) * da == diff(eb, a) * diff(alpha, b))) throw CommutationFailure("d_a d_b != d_b d_a");
      }
    }
  }
}

ChainComplex tot(const MultiComplex& m, TotLayout* layout) {
  TotLayout lay;
  ChainComplex c;
  c.graded = m.graded;
  for (auto& [alpha, o] : m.obj) {
    if (!o.dim) continue;
    int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
    lay.where[alpha] = {deg, c.dims[deg]};
    lay.order[deg].push_back(alpha);
    c.dims[deg] += o.dim;
    if (m.graded) {
      auto& l = c.q[deg];
      l.insert(l.end(), o.q.begin(), o.q.end());
    }
  }
  std::map<int, std::vector<Triplet>> trip;
  for (auto& [key, mat] : m.d) {
    const MIndex& alpha = key.first;
    MIndex beta = alpha;
    beta[key.second]++;
    auto s = lay.where.find(alpha), t = lay.where.find(beta);
    if (s == lay.where.end() || t == lay.where.end()) continue;
    const int sg = sign_rho(alpha, key.second);
    auto& out = trip[s->second.first];
    for (const auto& e : mat.triplets())
      out.push_back({t->second.second + e.row, s->second.second + e.col, sg * e.val});
  }
  for (auto& [deg, t] : trip) c.d[deg] = Matrix::from_triplets(c.dim(deg + 1), c.dim(deg), std::move(t));
  if (layout) *layout = std::move(lay);
  return c;
}

namespace {

MultiComplex filter(const MultiComplex& m, auto keep) {
  MultiComplex r;
  r.n = m.n;
  r.graded = m.graded;
  for (auto& [a, o] : m.obj)
    if (keep(a)) r.obj[a] = o;
  for (auto& [key, mat] : m.d) {
    MIndex b = key.first;
    b[key.second]++;
    if (keep(key.first) && keep(b)) r.d[key] = mat;
  }
  return r;
}

}  // namespace

MultiComplex truncate_ge(const MultiComplex& m, int a0, int r) {
  return filter(m, [&](const MIndex& a) { return a[a0] >= r; });
}

MultiComplex truncate_le(const MultiComplex& m, int a0, int r) {
  return filter(m, [&](const MIndex& a) { return a[a0] <= r; });
}

MultiComplex shift(const MultiComplex& m, const MIndex& alpha0) {
  MultiComplex r;
  r.n = m.n;
  r.graded = m.graded;
  auto sub = [&](MIndex a) {
    for (int k = 0; k < m.n; ++k) a[k] -= alpha0[k];
    return a;
  };
  for (auto& [a, o] : m.obj) r.obj[sub(a)] = o;
  for (auto& [key, mat] : m.d) r.d[{sub(key.first), key.second}] = alpha0[key.second] % 2 ? -mat : mat;
  return r;
}

ConeDecomposition cone_decomposition(const MultiComplex& m, int a0, int r) {
  ConeDecomposition cd;
  TotLayout ll, lh, lx;
  ChainComplex low0 = tot(truncate_le(m, a0, r - 1), &ll);
  cd.high = tot(truncate_ge(m, a0, r), &lh);
  cd.total = tot(m, &lx);
  cd.low = shift(low0, -1);
  std::map<int, std::vector<Triplet>> trip;
  for (auto& [key, mat] : m.d) {
    if (key.second != a0 || key.first[a0] != r - 1) continue;
    MIndex beta = key.first;
    beta[a0]++;
    auto s = ll.where.find(key.first), t = lh.where.find(beta);
    if (s == ll.where.end() || t == lh.where.end()) continue;
    const int sg = sign_rho(key.first, a0);
    for (const auto& e : mat.triplets())
      trip[s->second.first + 1].push_back({t->second.second + e.row, s->second.second + e.col, sg * e.val});
  }
  for (auto& [deg, t] : trip) cd.phi.f[deg] = Matrix::from_triplets(cd.high.dim(deg), cd.low.dim(deg), std::move(t));
  cd.cone = cone(cd.phi, cd.low, cd.high);
  // cone^n = high^n + low0^n  ->  total^n
  std::set<int> ds;
  for (auto [i, n] : cd.cone.dims)
    if (n) ds.insert(i);
  for (int n : ds) {
    std::vector<Triplet> t;
    for (auto& a : lh.order[n]) {
      auto [deg, off] = lh.where.at(a);
      int to = lx.where.at(a).second;
      for (int k = 0; k < m.dim(a); ++k) t.push_back({to + k, off + k, 1});
    }
    const int base = cd.high.dim(n);
    for (auto& a : ll.order[n]) {
      auto [deg, off] = ll.where.at(a);
      int to = lx.where.at(a).second;
      for (int k = 0; k < m.dim(a); ++k) t.push_back({to + k, base + off + k, 1});
    }
    cd.witness.f[n] = Matrix::from_triplets(cd.total.dim(n), cd.cone.dim(n), std::move(t));
    if (cd.total.dim(n) != cd.cone.dim(n) || static_cast<int>(cd.witness.f[n].nnz()) != cd.cone.dim(n))
      throw MathError("cone decomposition witness is not a bijection");
  }
  if (!is_chain_map(cd.witness, cd.cone, cd.total)) throw NotAChainMap("cone decomposition witness");
  return cd;
}

}  // namespace ckh
