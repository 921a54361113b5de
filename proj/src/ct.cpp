#include "wheelperc/ct.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wheelperc/dynamics.hpp"
#include "wheelperc/matchings.hpp"
#include "wheelperc/modarith.hpp"

namespace wheelperc {

SparseMultiPoly SparseMultiPoly::constant(int nv, const BigInt& c) {
  SparseMultiPoly p(nv);
  p.add(std::vector<int>(nv, 0), c);
  return p;
}

SparseMultiPoly SparseMultiPoly::monomial(int nv, const std::vector<int>& e, const BigInt& c) {
  if (static_cast<int>(e.size()) != nv) throw std::invalid_argument("monomial: exponent length mismatch");
  SparseMultiPoly p(nv);
  p.add(e, c);
  return p;
}

bool SparseMultiPoly::admits(const std::vector<int>& e) const {
  if (bounds.empty()) return true;
  for (int v = 0; v < nvars; ++v)
    if (bounds[v] >= 0 && e[v] > bounds[v]) return false;
  return true;
}

void SparseMultiPoly::add(const std::vector<int>& e, const BigInt& c) {
  if (sgn(c) == 0 || !admits(e)) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms.erase(it);
}

BigInt SparseMultiPoly::coefficient(const std::vector<int>& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? BigInt(0) : it->second;
}

int SparseMultiPoly::top_var() const {
  int top = -1;
  for (auto& [e, c] : terms)
    for (int v = nvars - 1; v > top; --v)
      if (e[v] > 0) {
        top = v;
        break;
      }
  return top;
}

int SparseMultiPoly::max_exponent(int v) const {
  int m = 0;
  for (auto& [e, c] : terms) m = std::max(m, e[v]);
  return m;
}

BigInt SparseMultiPoly::l1_norm() const {
  BigInt s = 0;
  for (auto& [e, c] : terms) s += abs(c);
  return s;
}

SparseMultiPoly truncated_multiply(const SparseMultiPoly& p, const SparseMultiPoly& q, const std::vector<int>& bounds) {
  if (p.nvars != q.nvars) throw std::invalid_argument("multiply: variable count mismatch");
  SparseMultiPoly r(p.nvars);
  r.bounds = bounds;
  std::vector<int> e(p.nvars);
  for (auto& [ep, cp] : p.terms)
    for (auto& [eq, cq] : q.terms) {
      bool ok = true;
      for (int v = 0; v < p.nvars && ok; ++v) {
        e[v] = ep[v] + eq[v];
        ok = bounds.empty() || bounds[v] < 0 || e[v] <= bounds[v];
      }
      if (ok) r.add(e, cp * cq);
    }
  return r;
}

SparseMultiPoly multiply(const SparseMultiPoly& p, const SparseMultiPoly& q) { return truncated_multiply(p, q, {}); }

SparseMultiPoly operator+(const SparseMultiPoly& p, const SparseMultiPoly& q) {
  if (p.nvars != q.nvars) throw std::invalid_argument("add: variable count mismatch");
  SparseMultiPoly r = p;
  for (auto& [e, c] : q.terms) r.add(e, c);
  return r;
}

SparseMultiPoly pair_factor(int nv, int i, int j) {
  if (!(0 <= i && i < j && j < nv)) throw std::out_of_range("pair_factor indices");
  SparseMultiPoly p(nv);
  auto mono = [&](int di, int dj, int c) {
    std::vector<int> e(nv, 0);
    e[i] = di;
    e[j] = dj;
    p.add(e, c);
  };
  // z_j + z_j^2 + z_i z_j^2 - z_i - z_i z_j - z_i^2 z_j
  mono(0, 1, 1);
  mono(0, 2, 1);
  mono(1, 2, 1);
  mono(1, 0, -1);
  mono(1, 1, -1);
  mono(2, 1, -1);
  return p;
}

SparseMultiPoly one_plus(int nv, int j) {
  SparseMultiPoly p = SparseMultiPoly::constant(nv, 1);
  std::vector<int> e(nv, 0);
  e[j] = 1;
  p.add(e, 1);
  return p;
}

BigInt extract_coefficient(const std::vector<SparseMultiPoly>& factors, const std::vector<int>& targets,
                           const EmitFn& emit) {
  if (factors.empty())
    return BigInt(std::all_of(targets.begin(), targets.end(), [](int t) { return t == 0; }) ? 1 : 0);
  const int nv = factors[0].nvars;
  if (static_cast<int>(targets.size()) != nv) throw std::invalid_argument("targets length mismatch");
  for (auto& f : factors)
    if (f.nvars != nv) throw std::invalid_argument("factor variable count mismatch");
  for (int t : targets)
    if (t < 0) return 0;
  std::vector<std::vector<const SparseMultiPoly*>> by_top(nv + 1);
  for (auto& f : factors) by_top[f.top_var() + 1].push_back(&f);
  SparseMultiPoly cur = SparseMultiPoly::constant(nv, 1);
  for (int j = nv - 1; j >= 0; --j) {
    for (auto* f : by_top[j + 1]) cur = truncated_multiply(cur, *f, targets);
    SparseMultiPoly next(nv);
    for (auto& [e, c] : cur.terms) {
      if (e[j] != targets[j]) continue;
      auto e2 = e;
      e2[j] = 0;
      next.add(e2, c);
    }
    cur = std::move(next);
    if (emit) emit(j, cur);
    if (cur.is_zero()) return 0;
  }
  for (auto* f : by_top[0]) cur = multiply(cur, *f);
  return cur.coefficient(std::vector<int>(nv, 0));
}

BigInt extract_coefficient_naive(const std::vector<SparseMultiPoly>& factors, const std::vector<int>& targets) {
  if (factors.empty())
    return BigInt(std::all_of(targets.begin(), targets.end(), [](int t) { return t == 0; }) ? 1 : 0);
  SparseMultiPoly cur = SparseMultiPoly::constant(factors[0].nvars, 1);
  for (auto& f : factors) cur = multiply(cur, f);
  return cur.coefficient(targets);
}

namespace {

using mod::u64;

// Dense array over variables 0..nv-1, variable 0 fastest.
struct Dense {
  std::vector<int> dim;
  std::vector<size_t> stride;
  std::vector<u64> a;

  void shape(const std::vector<int>& d) {
    dim = d;
    stride.assign(d.size(), 1);
    size_t s = 1;
    for (size_t v = 0; v < d.size(); ++v) {
      stride[v] = s;
      s *= static_cast<size_t>(d[v]);
    }
    a.assign(s, 0);
  }
  size_t size() const { return a.size(); }
  int nv() const { return static_cast<int>(dim.size()); }

  // f(L, idx) over all cells in descending linear order
  template <class F>
  void for_desc(F&& f) {
    const int n = nv();
    std::vector<int> idx(n);
    for (int v = 0; v < n; ++v) idx[v] = dim[v] - 1;
    for (size_t L = a.size(); L-- > 0;) {
      f(L, idx);
      for (int v = 0; v < n; ++v) {
        if (idx[v] > 0) {
          --idx[v];
          break;
        }
        idx[v] = dim[v] - 1;
      }
    }
  }
  template <class F>
  void for_asc(F&& f) const {
    const int n = nv();
    std::vector<int> idx(n, 0);
    for (size_t L = 0; L < a.size(); ++L) {
      f(L, idx);
      for (int v = 0; v < n; ++v) {
        if (idx[v] + 1 < dim[v]) {
          ++idx[v];
          break;
        }
        idx[v] = 0;
      }
    }
  }
};

void regrow(Dense& d, const std::vector<int>& newdim) {
  Dense out;
  out.shape(newdim);
  d.for_asc([&](size_t L, const std::vector<int>& idx) {
    if (!d.a[L]) return;
    size_t M = 0;
    for (int v = 0; v < d.nv(); ++v) M += static_cast<size_t>(idx[v]) * out.stride[v];
    out.a[M] = d.a[L];
  });
  d = std::move(out);
}

void mul_pair(Dense& d, int i, int j, u64 p) {
  const size_t si = d.stride[i], sj = d.stride[j];
  // (z_j - z_i)
  d.for_desc([&](size_t L, const std::vector<int>& idx) {
    u64 x = idx[j] > 0 ? d.a[L - sj] : 0;
    u64 y = idx[i] > 0 ? d.a[L - si] : 0;
    d.a[L] = mod::sub(x, y, p);
  });
  // (1 + z_j + z_i z_j)
  d.for_desc([&](size_t L, const std::vector<int>& idx) {
    if (idx[j] == 0) return;
    u64 s = mod::add(d.a[L], d.a[L - sj], p);
    if (idx[i] > 0) s = mod::add(s, d.a[L - sj - si], p);
    d.a[L] = s;
  });
}

void mul_one_plus(Dense& d, int j, u64 p) {
  const size_t sj = d.stride[j];
  d.for_desc([&](size_t L, const std::vector<int>& idx) {
    if (idx[j] > 0) d.a[L] = mod::add(d.a[L], d.a[L - sj], p);
  });
}

void mul_sparse(Dense& d, const std::vector<std::pair<std::vector<int>, u64>>& f, u64 p) {
  Dense out;
  out.shape(d.dim);
  d.for_asc([&](size_t L, const std::vector<int>& idx) {
    u64 x = d.a[L];
    if (!x) return;
    for (auto& [e, c] : f) {
      size_t M = L;
      bool ok = true;
      for (int v = 0; v < d.nv() && ok; ++v) {
        if (!e[v]) continue;
        ok = idx[v] + e[v] < d.dim[v];
        M += static_cast<size_t>(e[v]) * d.stride[v];
      }
      if (ok) out.a[M] = mod::add(out.a[M], mod::mul(x, c, p), p);
    }
  });
  d = std::move(out);
}

u64 omega_mod(const OmegaProblem& pr, u64 p) {
  const int n = pr.n;
  const auto& t = pr.targets;
  const int ftop = pr.f.top_var();
  std::vector<std::pair<std::vector<int>, u64>> fmod;
  for (auto& [e, c] : pr.f.terms) fmod.emplace_back(e, mod::reduce(c, p));
  std::vector<int> deg(n, 0);
  Dense d;
  d.shape(std::vector<int>(n, 1));
  d.a[0] = 1;
  for (int j = n - 1; j >= 0; --j) {
    // grow bounds for everything multiplied in at this step
    std::vector<int> nd(deg.begin(), deg.begin() + j + 1);
    for (int i = 0; i < j; ++i) {
      nd[j] += 2;
      nd[i] += 2;
    }
    if (pr.one_plus[j]) nd[j] += 1;
    if (ftop == j)
      for (int v = 0; v <= j; ++v) nd[v] += pr.f.max_exponent(v);
    for (int v = 0; v <= j; ++v) {
      nd[v] = std::min(nd[v], t[v]);
      deg[v] = nd[v];
      nd[v] += 1;
    }
    regrow(d, nd);
    if (ftop == j) mul_sparse(d, fmod, p);
    if (pr.one_plus[j]) mul_one_plus(d, j, p);
    for (int i = 0; i < j; ++i) mul_pair(d, i, j, p);
    // slice z_j = t_j; var j is the slowest index so the slice is contiguous
    if (t[j] >= d.dim[j]) return 0;
    Dense s;
    std::vector<int> sd(d.dim.begin(), d.dim.begin() + j);
    s.shape(sd);
    std::copy(d.a.begin() + static_cast<long>(t[j] * d.stride[j]),
              d.a.begin() + static_cast<long>(t[j] * d.stride[j] + s.size()), s.a.begin());
    d = std::move(s);
  }
  if (ftop < 0) {
    u64 c = 0;
    for (auto& [e, cc] : fmod) c = mod::add(c, cc, p);
    return mod::mul(d.a[0], c, p);
  }
  return d.a[0];
}

}  // namespace

std::vector<SparseMultiPoly> omega_factors(const OmegaProblem& pr) {
  std::vector<SparseMultiPoly> fs;
  if (!pr.f.is_zero()) fs.push_back(pr.f);
  for (int j = 1; j < pr.n; ++j)
    for (int i = 0; i < j; ++i) fs.push_back(pair_factor(pr.n, i, j));
  for (int j = 0; j < pr.n; ++j)
    if (pr.one_plus[j]) fs.push_back(one_plus(pr.n, j));
  return fs;
}

BigInt omega_coefficient(const OmegaProblem& pr) {
  const int n = pr.n;
  if (n < 1) throw std::invalid_argument("omega_coefficient: n must be positive");
  if (pr.f.nvars != n || static_cast<int>(pr.targets.size()) != n || static_cast<int>(pr.one_plus.size()) != n)
    throw std::invalid_argument("omega_coefficient: shape mismatch");
  if (pr.f.is_zero()) return 0;
  for (int t : pr.targets)
    if (t < 0) return 0;
  // |coefficient| <= 6^{pairs} 2^{#(1+z)} |F|_1
  BigInt bound = pr.f.l1_norm();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) bound *= 6;
    if (pr.one_plus[j]) bound *= 2;
  }
  mod::Crt crt;
  for (int k = 0; crt.modulus <= 2 * bound; ++k) {
    u64 p = mod::prime(k);
    crt.add(omega_mod(pr, p), p);
  }
  return crt.symmetric();
}

BigInt asm_via_ct(int n) {
  OmegaProblem pr;
  pr.n = n;
  pr.f = SparseMultiPoly::constant(n, 1);
  pr.one_plus.assign(n, 1);
  pr.one_plus[0] = 0;
  for (int j = 0; j < n; ++j) pr.targets.push_back(2 * j);
  return omega_coefficient(pr);
}

BigInt phi_eval1(const std::vector<int>& a) {
  if (!is_weak_sequence(a)) throw std::invalid_argument("phi_eval1: sequence outside A_n");
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  OmegaProblem pr;
  pr.n = n;
  pr.f = SparseMultiPoly::constant(n, 1);
  pr.one_plus.assign(n, 0);
  for (int x : a) pr.targets.push_back(x - 1);
  return omega_coefficient(pr);
}

OmegaProblem submatching_problem(const SparseMultiPoly& f, int n) {
  const int k = f.nvars;
  if (n < k + 1) throw std::invalid_argument("submatching coefficient needs n >= k+1");
  OmegaProblem pr;
  pr.n = n;
  pr.f = SparseMultiPoly(n);
  for (auto& [e, c] : f.terms) {
    std::vector<int> e2(n, 0);
    for (int j = 0; j < k; ++j) e2[j + 1] = e[j];
    pr.f.add(e2, c);
  }
  pr.one_plus.assign(n, 0);
  for (int j = k + 1; j < n; ++j) pr.one_plus[j] = 1;
  for (int j = 0; j < n; ++j) pr.targets.push_back(2 * j);
  // every monomial of F must fit under the target, otherwise it cannot contribute
  for (auto& [e, c] : pr.f.terms)
    for (int v = 0; v < n; ++v)
      if (e[v] > pr.targets[v])
        throw std::logic_error("submatching_coefficient: F exponent above target degree");
  return pr;
}

BigInt submatching_coefficient(const SparseMultiPoly& f, int n) { return omega_coefficient(submatching_problem(f, n)); }

BigInt event_denominator(int k, long n) {
  BigInt d = 1;
  for (int j = 1; j <= k; ++j) {
    // odd squares, as in every explicit identity
    BigInt f = BigInt(4) * n * n - BigInt(2 * j - 1) * (2 * j - 1);
    for (int e = 0; e < k + 1 - j; ++e) d *= f;
  }
  return d;
}

bool is_dyadic(const BigRational& x) {
  BigInt d = x.get_den();
  return mpz_popcount(d.get_mpz_t()) == 1;
}

std::string poly_in_n(const UPoly& in_m) {
  UPoly in_n(in_m.empty() ? 0 : 2 * in_m.size() - 1);
  for (size_t i = 0; i < in_m.size(); ++i) in_n[2 * i] = in_m[i];
  return poly_to_string(in_n, "n");
}

ProbeReport conjecture_probe(const std::vector<int>& a, const std::vector<long>& n_values) {
  if (!is_opener_sequence(a)) throw std::invalid_argument("conjecture_probe: not a strict opener sequence");
  ProbeReport r;
  r.a = a;
  r.k = static_cast<int>(a.size());
  r.degree_m = r.k * (r.k + 1) / 2;
  r.n_values = n_values;
  const size_t need = static_cast<size_t>(r.degree_m) + 1;
  if (n_values.size() < need + 1)
    throw std::invalid_argument("conjecture_probe: need at least " + std::to_string(need + 1) +
                                " values of n (fit plus one held out)");
  SparseMultiPoly mono(r.k);
  std::vector<int> e(r.k);
  for (int j = 0; j < r.k; ++j) e[j] = 2 * (j + 1) - a[j];
  mono.add(e, 1);
  std::vector<std::pair<BigRational, BigRational>> pts;
  std::vector<BigRational> q;
  for (long n : n_values) {
    if (n < r.k + 1) throw std::invalid_argument("conjecture_probe: n must be at least k+1");
    BigRational val(submatching_coefficient(mono, static_cast<int>(n)), asm_count(static_cast<int>(n)));
    val.canonicalize();
    r.values.push_back(val);
    q.push_back(val * BigRational(event_denominator(r.k, n)));
  }
  for (size_t i = 0; i < n_values.size(); ++i) {
    if (i < need) {
      r.fit_nodes.push_back(n_values[i]);
      pts.emplace_back(BigRational(n_values[i] * n_values[i]), q[i]);
    } else {
      r.held_out.push_back(n_values[i]);
    }
  }
  r.numerator_m = lagrange_interpolate(pts);
  r.all_ok = true;
  for (size_t i = need; i < n_values.size(); ++i) {
    bool ok = poly_eval(r.numerator_m, BigRational(n_values[i] * n_values[i])) == q[i];
    r.held_out_ok.push_back(ok);
    r.all_ok = r.all_ok && ok;
  }
  r.dyadic = std::all_of(r.numerator_m.begin(), r.numerator_m.end(), is_dyadic);
  return r;
}

}  // namespace wheelperc
