#include "wheelperc/linalg.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "wheelperc/modarith.hpp"

namespace wheelperc {

namespace mod {

u64 prime(int i) {
  static std::mutex mu;
  static std::vector<u64> cache;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= i) {
    u64 start = cache.empty() ? (u64{1} << 62) : cache.back();
    BigInt c(std::to_string(start - 1));
    while (mpz_probab_prime_p(c.get_mpz_t(), 40) == 0) c -= 1;
    cache.push_back(std::stoull(c.get_str()));
  }
  return cache[i];
}

u64 pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 reduce(const BigInt& x, u64 p) {
  BigInt pp(std::to_string(p));
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  return std::stoull(r.get_str());
}

void Crt::add(u64 residue, u64 p) {
  BigInt pp(std::to_string(p));
  u64 cur = reduce(value, p);
  u64 minv = inv(reduce(modulus, p), p);
  u64 t = mul(sub(residue % p, cur, p), minv, p);
  value += modulus * BigInt(std::to_string(t));
  modulus *= pp;
}

BigInt Crt::symmetric() const {
  BigInt half = modulus / 2;
  return value > half ? BigInt(value - modulus) : value;
}

}  // namespace mod

long SparseIntMatrix::at(int i, int j) const {
  for (auto& [c, v] : rows[i])
    if (c == j) return v;
  return 0;
}

QMatrix multiply(const QMatrix& x, const QMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch");
  QMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

ZMatrix multiply(const ZMatrix& x, const ZMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch");
  ZMatrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (sgn(x(i, k)) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

QMatrix to_rational(const SparseIntMatrix& m) {
  QMatrix r(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (auto& [j, v] : m.rows[i]) r(i, j) = v;
  return r;
}

static std::vector<BigRational> normalize_sum(std::vector<BigRational> v) {
  BigRational s = 0;
  for (auto& x : v) s += x;
  if (sgn(s) == 0) throw std::runtime_error("nullspace vector sums to zero; cannot normalize");
  for (auto& x : v) x /= s;
  return v;
}

std::vector<BigRational> nullspace_1d_bareiss(const QMatrix& m) {
  // Solve A x = 0 with A = M^T, integer rows after clearing denominators.
  const int n = m.rows;
  if (m.cols != n) throw std::invalid_argument("nullspace_1d expects a square matrix");
  ZMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    BigInt l = 1;
    for (int j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(j, i).get_den_mpz_t());
    for (int j = 0; j < n; ++j) a(i, j) = m(j, i).get_num() * (l / m(j, i).get_den());
  }
  std::vector<int> pivcol;
  BigInt prev = 1;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (sgn(a(i, c)) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(r, j));
    for (int i = r + 1; i < n; ++i) {
      for (int j = c + 1; j < n; ++j) {
        a(i, j) = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    pivcol.push_back(c);
    ++r;
  }
  const int nullity = n - r;
  if (nullity != 1)
    throw std::runtime_error("structural failure: nullspace dimension " + std::to_string(nullity) + ", expected 1");
  std::vector<char> is_piv(n, 0);
  for (int c : pivcol) is_piv[c] = 1;
  int free_col = 0;
  while (is_piv[free_col]) ++free_col;
  std::vector<BigRational> x(n);
  x[free_col] = 1;
  for (int i = r - 1; i >= 0; --i) {
    int c = pivcol[i];
    BigRational s = 0;
    for (int j = c + 1; j < n; ++j)
      if (sgn(a(i, j)) != 0 && sgn(x[j]) != 0) s += BigRational(a(i, j)) * x[j];
    x[c] = -s / BigRational(a(i, c));
  }
  return normalize_sum(std::move(x));
}

bool rational_reconstruct(const BigInt& u, const BigInt& m, BigRational& out) {
  BigInt bound;
  BigInt half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  BigInt r0 = m, r1 = u % m;
  if (r1 < 0) r1 += m;
  BigInt t0 = 0, t1 = 1;
  while (r1 > bound) {
    BigInt qq = r0 / r1;
    BigInt r2 = r0 - qq * r1;
    BigInt t2 = t0 - qq * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = BigRational(r1, t1);
  out.canonicalize();
  return true;
}

namespace {

// Kernel of A = M^T mod p, normalized at column `norm_col` (or the free column when < 0).
// Returns false when the mod-p nullity is not 1 or normalization is impossible.
bool kernel_mod_p(const SparseIntMatrix& m, mod::u64 p, int& norm_col, std::vector<mod::u64>& x, int& nullity) {
  const int n = m.dim;
  std::vector<mod::u64> a(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (auto& [j, v] : m.rows[i]) a[static_cast<size_t>(j) * n + i] = mod::reduce(v, p);
  auto at = [&](int i, int j) -> mod::u64& { return a[static_cast<size_t>(i) * n + j]; };
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (at(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(r, j));
    mod::u64 iv = mod::inv(at(r, c), p);
    for (int j = c; j < n; ++j) at(r, j) = mod::mul(at(r, j), iv, p);
    for (int i = 0; i < n; ++i) {
      if (i == r || at(i, c) == 0) continue;
      mod::u64 f = at(i, c);
      for (int j = c; j < n; ++j)
        if (at(r, j)) at(i, j) = mod::sub(at(i, j), mod::mul(f, at(r, j), p), p);
    }
    pivcol.push_back(c);
    ++r;
  }
  nullity = n - r;
  if (nullity != 1) return false;
  std::vector<char> is_piv(n, 0);
  for (int c : pivcol) is_piv[c] = 1;
  int free_col = 0;
  while (is_piv[free_col]) ++free_col;
  x.assign(n, 0);
  x[free_col] = 1;
  for (int i = 0; i < r; ++i) x[pivcol[i]] = mod::sub(0, at(i, free_col), p);
  if (norm_col < 0) norm_col = free_col;
  if (x[norm_col] == 0) return false;
  mod::u64 s = mod::inv(x[norm_col], p);
  for (auto& v : x) v = mod::mul(v, s, p);
  return true;
}

}  // namespace

std::vector<BigRational> nullspace_1d_modular(const SparseIntMatrix& m) {
  const int n = m.dim;
  if (n == 0) throw std::runtime_error("structural failure: empty system");
  int norm_col = -1;
  std::vector<mod::Crt> crt(n);
  int bad = 0;
  for (int pi = 0; pi < 64; ++pi) {
    mod::u64 p = mod::prime(pi);
    std::vector<mod::u64> x;
    int nullity = 0;
    if (!kernel_mod_p(m, p, norm_col, x, nullity)) {
      if (nullity == 0) throw std::runtime_error("structural failure: nullspace dimension 0, expected 1");
      if (++bad >= 3)
        throw std::runtime_error("structural failure: nullspace dimension " + std::to_string(nullity) +
                                 " (mod several primes), expected 1");
      continue;
    }
    for (int i = 0; i < n; ++i) crt[i].add(x[i], p);
    std::vector<BigRational> v(n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = rational_reconstruct(crt[i].value, crt[i].modulus, v[i]);
    if (!ok) continue;
    // exact certificate: v * M = 0 over Q
    std::vector<BigRational> res(n);
    for (int i = 0; i < n; ++i)
      for (auto& [j, val] : m.rows[i]) res[j] += v[i] * val;
    bool zero = true;
    for (auto& r : res) zero = zero && sgn(r) == 0;
    if (zero) return normalize_sum(std::move(v));
  }
  throw std::runtime_error("nullspace reconstruction did not converge");
}

std::vector<BigRational> nullspace_1d(const QMatrix& m) { return nullspace_1d_bareiss(m); }

std::vector<BigRational> nullspace_1d(const SparseIntMatrix& m) {
  if (m.dim <= 64) return nullspace_1d_bareiss(to_rational(m));
  return nullspace_1d_modular(m);
}

ZMatrix invert_unitriangular(const ZMatrix& c) {
  const int n = c.rows;
  if (c.cols != n) throw std::invalid_argument("invert_unitriangular expects a square matrix");
  for (int i = 0; i < n; ++i)
    if (c(i, i) != 1) throw std::invalid_argument("invert_unitriangular: diagonal entry is not 1");
  // topological order: i before j whenever c(i,j) != 0
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && sgn(c(i, j)) != 0) {
        out[i].push_back(j);
        ++indeg[j];
      }
  std::vector<int> order;
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (!indeg[i]) queue.push_back(i);
  while (!queue.empty()) {
    int i = queue.back();
    queue.pop_back();
    order.push_back(i);
    for (int j : out[i])
      if (--indeg[j] == 0) queue.push_back(j);
  }
  if (static_cast<int>(order.size()) != n) throw std::invalid_argument("invert_unitriangular: matrix is not triangular");
  // U = permuted c is upper unitriangular; X = U^{-1}
  std::vector<std::vector<std::pair<int, BigInt>>> urow(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (sgn(c(order[a], order[b])) != 0) urow[a].emplace_back(b, c(order[a], order[b]));
  ZMatrix x(n, n);
  for (int j = 0; j < n; ++j) {
    x(j, j) = 1;
    for (int i = j - 1; i >= 0; --i) {
      BigInt s = 0;
      for (auto& [k, u] : urow[i]) {
        if (k > j) break;
        if (sgn(x(k, j)) != 0) s += u * x(k, j);
      }
      x(i, j) = -s;
    }
  }
  ZMatrix r(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r(order[a], order[b]) = x(a, b);
  return r;
}

void poly_trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly poly_mul(const UPoly& x, const UPoly& y) {
  if (x.empty() || y.empty()) return {};
  UPoly r(x.size() + y.size() - 1);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  poly_trim(r);
  return r;
}

UPoly lagrange_interpolate(const std::vector<std::pair<BigRational, BigRational>>& pts) {
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (pts[i].first == pts[j].first) throw std::invalid_argument("duplicate abscissa in interpolation");
  // Newton divided differences
  std::vector<BigRational> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = pts[i].second;
  for (size_t lvl = 1; lvl < n; ++lvl)
    for (size_t i = n - 1; i >= lvl; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (pts[i].first - pts[i - lvl].first);
      if (i == lvl) break;
    }
  UPoly result;
  for (size_t i = n; i-- > 0;) {
    // result = result * (x - x_i) + dd[i]
    UPoly next(result.size() + 1);
    for (size_t k = 0; k < result.size(); ++k) {
      next[k + 1] += result[k];
      next[k] -= result[k] * pts[i].first;
    }
    next[0] += dd[i];
    result = std::move(next);
  }
  poly_trim(result);
  return result;
}

BigRational poly_eval(const UPoly& p, const BigRational& x) {
  BigRational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

std::string poly_to_string(const UPoly& p, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (sgn(p[i]) == 0) continue;
    BigRational c = p[i];
    if (!first) os << (sgn(c) < 0 ? "-" : "+");
    else if (sgn(c) < 0) os << "-";
    c = abs(c);
    bool unit = c == 1 && i > 0;
    if (!unit) os << (c.get_den() == 1 ? to_string(c) : "(" + to_string(c) + ")");
    if (i > 0) os << var << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace wheelperc
