#include "wheelperc/dynamics.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace wheelperc {

BigInt asm_count(int n) {
  if (n < 0) throw std::invalid_argument("asm_count: negative n");
  BigRational r = 1;
  for (int j = 0; j < n; ++j) r *= BigRational(factorial(3 * j + 1), factorial(n + j));
  r.canonicalize();
  if (r.get_den() != 1) throw std::logic_error("asm_count: non-integral product");
  return r.get_num();
}

SparseIntMatrix s_matrix(int n) {
  const Basis& b = basis(n);
  SparseIntMatrix s;
  s.dim = b.dim();
  s.rows.resize(s.dim);
  for (int i = 0; i < s.dim; ++i) {
    std::map<int, long> row;
    for (int k = 1; k <= 2 * n; ++k) row[b.index(apply_e(k, b[i]))] += 1;
    for (auto& [j, v] : row) s.rows[i].emplace_back(j, v);
  }
  return s;
}

SparseIntMatrix hamiltonian(int n) {
  SparseIntMatrix h = s_matrix(n);
  for (int i = 0; i < h.dim; ++i) {
    bool diag = false;
    for (auto& [j, v] : h.rows[i]) {
      v = -v;
      if (j == i) {
        v += 2 * n;
        diag = true;
      }
    }
    if (!diag) h.rows[i].emplace_back(i, 2 * n);
    std::vector<std::pair<int, long>> kept;
    for (auto& e : h.rows[i])
      if (e.second != 0) kept.push_back(e);
    std::sort(kept.begin(), kept.end());
    h.rows[i] = std::move(kept);
  }
  return h;
}

const Stationary& stationary(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Stationary>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return *it->second;
  }
  if (n < 1) throw std::invalid_argument("stationary: n must be positive");
  auto st = std::make_unique<Stationary>();
  st->n = n;
  st->asm_n = asm_count(n);
  st->mu = nullspace_1d(hamiltonian(n));
  for (auto& m : st->mu) {
    BigRational a = m * BigRational(st->asm_n);
    if (a.get_den() != 1) throw std::runtime_error("stationary: alpha not integral at n=" + std::to_string(n));
    st->alpha.push_back(a.get_num());
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[n];
  if (!slot) slot = std::move(st);
  return *slot;
}

PlaquetteRow unit_row(int n, int k) {
  if (k < 1 || k > 2 * n) throw std::out_of_range("unit_row: position out of range");
  PlaquetteRow r(2 * n, 0);
  r[k - 1] = 1;
  return r;
}

std::vector<int> row_diagram(const PlaquetteRow& row) {
  const int m = static_cast<int>(row.size());
  if (m == 0 || m % 2) throw std::invalid_argument("plaquette row must have even positive length");
  // Nodes: T_i = i, B_i = m+i, E_i = 2m+i (E_0 = E_m), all 1-based.
  // Plaquette i, type 0: T_i-E_i, E_{i-1}-B_i; type 1: T_i-E_{i-1}, E_i-B_i.
  // Bit k flips plaquette k+1, so that the unit row at k acts as rotate o e_k.
  auto E = [m](int i) { return 2 * m + ((i - 1 + m) % m) + 1; };
  std::vector<std::vector<int>> adj(3 * m + 1);
  auto link = [&](int x, int y) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  };
  for (int i = 1; i <= m; ++i) {
    int k = i == 1 ? m : i - 1;
    if (row[k - 1] != 0 && row[k - 1] != 1) throw std::invalid_argument("plaquette bits must be 0 or 1");
    if (row[k - 1] == 0) {
      link(i, E(i));
      link(E(i - 1), m + i);
    } else {
      link(i, E(i - 1));
      link(E(i), m + i);
    }
  }
  std::vector<int> pr(2 * m, 0);
  for (int s = 1; s <= 2 * m; ++s) {
    if (pr[s - 1]) continue;
    int prev = s, cur = adj[s][0];
    while (cur > 2 * m) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
    }
    pr[s - 1] = cur;
    pr[cur - 1] = s;
  }
  return pr;
}

Matching apply_row_diagram(const std::vector<int>& d, const Matching& pi) {
  const int m = pi.size();
  if (static_cast<int>(d.size()) != 2 * m) throw std::invalid_argument("row size does not match matching");
  std::vector<int> out(m, 0);
  for (int i = 1; i <= m; ++i) {
    if (out[i - 1]) continue;
    int cur = d[m + i - 1];
    // alternate: row edge lands on a lower end, follow pi, then the row again
    while (cur <= m) cur = d[pi.partner(cur) - 1];
    int j = cur - m;
    out[i - 1] = j;
    out[j - 1] = i;
  }
  return Matching(std::move(out));
}

Matching apply_row(const PlaquetteRow& row, const Matching& pi) {
  if (static_cast<int>(row.size()) != pi.size()) throw std::invalid_argument("row size does not match matching");
  return apply_row_diagram(row_diagram(row), pi);
}

TransferMatrix transfer_matrix(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("transfer_matrix: n must be in 1..6");
  const Basis& b = basis(n);
  const int m = 2 * n, dim = b.dim();
  // counts[i][j][w] = #rows with w ones sending pi_i to pi_j
  std::vector<long> counts(static_cast<size_t>(dim) * dim * (m + 1), 0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    PlaquetteRow row(m);
    int w = 0;
    for (int k = 0; k < m; ++k) w += row[k] = (mask >> k) & 1;
    auto d = row_diagram(row);
    for (int i = 0; i < dim; ++i) {
      int j = b.index(apply_row_diagram(d, b[i]));
      ++counts[(static_cast<size_t>(i) * dim + j) * (m + 1) + w];
    }
  }
  // p^w (1-p)^(m-w) in the monomial basis
  std::vector<UPoly> basis_poly(m + 1);
  for (int w = 0; w <= m; ++w) {
    UPoly p(m + 1);
    for (int t = 0; t <= m - w; ++t) {
      BigRational c(binomial(m - w, t));
      p[w + t] = t % 2 ? BigRational(-c) : c;
    }
    basis_poly[w] = p;
  }
  TransferMatrix t;
  t.n = n;
  t.dim = dim;
  t.entries.resize(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      UPoly e(m + 1);
      for (int w = 0; w <= m; ++w) {
        long c = counts[(static_cast<size_t>(i) * dim + j) * (m + 1) + w];
        if (!c) continue;
        for (int d = 0; d <= m; ++d) e[d] += basis_poly[w][d] * c;
      }
      poly_trim(e);
      t.entries[static_cast<size_t>(i) * dim + j] = std::move(e);
    }
  return t;
}

QMatrix transfer_at(const TransferMatrix& t, const BigRational& p) {
  QMatrix r(t.dim, t.dim);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) r(i, j) = poly_eval(t.at(i, j), p);
  return r;
}

QMatrix transfer_at(int n, const BigRational& p) { return transfer_at(transfer_matrix(n), p); }

QMatrix derivative_at_zero(const TransferMatrix& t) {
  QMatrix r(t.dim, t.dim);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) {
      auto& e = t.at(i, j);
      r(i, j) = e.size() > 1 ? e[1] : BigRational(0);
    }
  return r;
}

QMatrix rotation_matrix(int n) {
  const Basis& b = basis(n);
  QMatrix r(b.dim(), b.dim());
  for (int i = 0; i < b.dim(); ++i) r(i, b.index(rotate(b[i]))) = 1;
  return r;
}

static std::vector<BigRational> row_times(const std::vector<BigRational>& v, const QMatrix& m) {
  std::vector<BigRational> r(m.cols);
  for (int i = 0; i < m.rows; ++i)
    if (sgn(v[i]) != 0)
      for (int j = 0; j < m.cols; ++j)
        if (sgn(m(i, j)) != 0) r[j] += v[i] * m(i, j);
  return r;
}

Report verify_sum_rules(int n) {
  Report r;
  r.name = "sum rules n=" + std::to_string(n);
  const Stationary& st = stationary(n);
  const Basis& b = basis(n);
  BigInt sum = 0, lo = st.alpha[0], hi = st.alpha[0];
  for (auto& a : st.alpha) {
    sum += a;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  r.expect(sum == st.asm_n, "sum alpha = " + sum.get_str() + " vs ASM " + st.asm_n.get_str());
  r.expect(lo == 1, "min alpha = " + lo.get_str());
  r.expect(st.alpha[b.index(pi_min(n))] == 1, "alpha at pi_min");
  const BigInt top = n > 1 ? asm_count(n - 1) : BigInt(1);
  r.expect(hi == top, "max alpha = " + hi.get_str() + " vs ASM(n-1) " + top.get_str());
  r.expect(st.alpha[b.index(pi_max(n))] == top, "alpha at pi_max");
  for (int i = 0; i < b.dim(); ++i)
    r.expect(st.alpha[b.index(rotate(b[i]))] == st.alpha[i], "rotation invariance at " + b[i].to_json());
  return r;
}

Report verify_hamiltonian(int n) {
  Report r;
  r.name = "mu H = 0 n=" + std::to_string(n);
  const Stationary& st = stationary(n);
  SparseIntMatrix h = hamiltonian(n);
  std::vector<BigRational> out(h.dim);
  for (int i = 0; i < h.dim; ++i)
    for (auto& [j, v] : h.rows[i]) out[j] += st.mu[i] * BigRational(v);
  for (int j = 0; j < h.dim; ++j) r.expect(sgn(out[j]) == 0, "column " + std::to_string(j));
  return r;
}

Report verify_transfer_stationarity(int n) {
  Report r;
  r.name = "mu T(p) = mu n=" + std::to_string(n);
  const Stationary& st = stationary(n);
  TransferMatrix t = transfer_matrix(n);
  for (auto p : {BigRational(1, 4), BigRational(1, 2), BigRational(3, 4)}) {
    auto v = row_times(st.mu, transfer_at(t, p));
    r.expect(v == st.mu, "p=" + to_string(p));
  }
  return r;
}

Report verify_transfer_commuting(int n) {
  Report r;
  r.name = "T(1/3) T(1/5) commute n=" + std::to_string(n);
  TransferMatrix t = transfer_matrix(n);
  QMatrix a = transfer_at(t, BigRational(1, 3)), b = transfer_at(t, BigRational(1, 5));
  QMatrix ab = multiply(a, b), ba = multiply(b, a);
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j) r.expect(ab(i, j) == ba(i, j), "entry " + std::to_string(i) + "," + std::to_string(j));
  return r;
}

Report verify_row_operators(int n) {
  Report r;
  r.name = "row operators n=" + std::to_string(n);
  const Basis& b = basis(n);
  for (auto& pi : b.list()) {
    r.expect(apply_row(PlaquetteRow(2 * n, 0), pi) == rotate(pi), "f_0 at " + pi.to_json());
    for (int k = 1; k <= 2 * n; ++k)
      r.expect(apply_row(unit_row(n, k), pi) == rotate(apply_e(k, pi)),
               "f_a" + std::to_string(k) + " at " + pi.to_json());
  }
  return r;
}

Report verify_generator(int n) {
  Report r;
  r.name = "dT/dp at 0 = (S - 2nI) R n=" + std::to_string(n);
  QMatrix d = derivative_at_zero(transfer_matrix(n));
  QMatrix rot = rotation_matrix(n);
  SparseIntMatrix s = s_matrix(n);
  QMatrix sm(s.dim, s.dim);
  for (int i = 0; i < s.dim; ++i) {
    for (auto& [j, v] : s.rows[i]) sm(i, j) += BigRational(v);
    sm(i, i) -= BigRational(2 * n);
  }
  QMatrix want = multiply(sm, rot);
  for (int i = 0; i < s.dim; ++i)
    for (int j = 0; j < s.dim; ++j) r.expect(d(i, j) == want(i, j), "entry " + std::to_string(i) + "," + std::to_string(j));
  return r;
}

}  // namespace wheelperc
