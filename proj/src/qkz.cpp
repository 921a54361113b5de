#include "wheelperc/qkz.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "wheelperc/dynamics.hpp"

namespace wheelperc {

int chi(long p) {
  long r = ((p % 3) + 3) % 3;
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

Eisenstein chi_eisenstein(long p) {
  Eisenstein num = Eisenstein::q_power(p) - Eisenstein::q_power(-p);
  Eisenstein den = Eisenstein::q_power(1) - Eisenstein::q_power(-1);
  return num / den;
}

int c_entry(const std::vector<int>& a, const Matching& sigma) {
  if (static_cast<int>(a.size()) != sigma.order()) throw std::invalid_argument("c_entry: order mismatch");
  int r = 1;
  for (auto [j, k] : sigma.arcs()) {
    long cnt = 0;
    for (int x : a) cnt += (j <= x && x < k);
    r *= chi(cnt - (k - j - 1) / 2);
    if (!r) return 0;
  }
  return r;
}

int c_entry_recursive(const std::vector<int>& a, const Matching& sigma, int arc_choice) {
  if (static_cast<int>(a.size()) != sigma.order()) throw std::invalid_argument("c_entry_recursive: order mismatch");
  if (sigma.order() == 0) return 1;
  std::vector<int> little;
  for (int j = 1; j < sigma.size(); ++j)
    if (sigma.partner(j) == j + 1) little.push_back(j);
  const int cnt = static_cast<int>(little.size());
  const int j = little[static_cast<size_t>(((arc_choice % cnt) + cnt) % cnt)];
  int p = 0;
  for (int x : a) p += x == j;
  if (p == 0) return 0;
  int c = chi(p);
  if (!c) return 0;
  std::vector<int> hat;
  bool dropped = false;
  for (int x : a) {
    if (x < j) hat.push_back(x);
    else if (x == j) {
      // leftover copies of j land on j-1 after the two labels go away
      if (dropped) hat.push_back(x - 1);
      dropped = true;
    } else {
      hat.push_back(x - 2);
    }
  }
  return c * c_entry_recursive(hat, delete_little_arc(sigma, j), arc_choice);
}

const ZMatrix& c_matrix(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ZMatrix>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[n];
  if (!slot) {
    const Basis& b = basis(n);
    auto m = std::make_unique<ZMatrix>(b.dim(), b.dim());
    for (int i = 0; i < b.dim(); ++i) {
      auto a = b[i].openers();
      for (int j = 0; j < b.dim(); ++j) (*m)(i, j) = c_entry(a, b[j]);
    }
    slot = std::move(m);
  }
  return *slot;
}

const ZMatrix& c_tilde(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ZMatrix>> memo;
  const ZMatrix& c = c_matrix(n);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[n];
  if (!slot) slot = std::make_unique<ZMatrix>(invert_unitriangular(c));
  return *slot;
}

SparseMultiPoly f_polynomial(const Matching& pi0) {
  const int k = pi0.order();
  SparseMultiPoly f(k);
  if (k == 0) {
    f.add({}, 1);
    return f;
  }
  const Basis& b = basis(k);
  const ZMatrix& ct = c_tilde(k);
  const int row = b.index(pi0);
  for (int col = 0; col < b.dim(); ++col) {
    if (sgn(ct(row, col)) == 0) continue;
    auto a = b[col].openers();
    std::vector<int> e(k);
    for (int j = 0; j < k; ++j) e[j] = 2 * (j + 1) - a[j];
    f.add(e, ct(row, col));
  }
  return f;
}

std::vector<BigInt> psi_vector(int n) { return stationary(n).alpha; }

std::vector<BigInt> phi_vector(int n) {
  const ZMatrix& c = c_matrix(n);
  auto psi = psi_vector(n);
  std::vector<BigInt> phi(c.rows);
  for (int i = 0; i < c.rows; ++i)
    for (int j = 0; j < c.cols; ++j)
      if (sgn(c(i, j)) != 0) phi[i] += c(i, j) * psi[j];
  return phi;
}

std::vector<std::vector<int>> b_set(int n) {
  std::vector<std::vector<int>> out;
  if (n < 1) return out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> a{1};
    for (int j = 2; j <= n; ++j) a.push_back((mask >> (j - 2)) & 1 ? 2 * j - 1 : 2 * j - 2);
    out.push_back(a);
  }
  return out;
}

static std::string seq_str(const std::vector<int>& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

// pi_{2j-1} = +1 iff a_j = 2j-1, for j in [from, n]
static bool parity_class(const Matching& pi, const std::vector<int>& a, int from) {
  const int n = pi.order();
  for (int j = from; j <= n; ++j) {
    bool up = pi.partner(2 * j - 1) > 2 * j - 1;
    if (up != (a[j - 1] == 2 * j - 1)) return false;
  }
  return true;
}

Report verify_product_expansion(int n) {
  Report r;
  r.name = "product expansion n=" + std::to_string(n);
  const Basis& b = basis(n);
  auto psi = psi_vector(n);
  for (auto& a : b_set(n)) {
    BigInt lhs = phi_eval1(a), rhs = 0;
    for (int i = 0; i < b.dim(); ++i)
      if (parity_class(b[i], a, 1)) rhs += psi[i];
    r.expect(lhs == rhs, "a=" + seq_str(a) + " phi=" + lhs.get_str() + " sum psi=" + rhs.get_str());
  }
  return r;
}

Report verify_submatching_expansion(const Matching& pi0, int n) {
  const int k = pi0.order();
  if (n < k + 1) throw std::invalid_argument("verify_submatching_expansion: need n >= k+1");
  Report r;
  r.name = "submatching expansion pi0=" + pi0.to_json() + " n=" + std::to_string(n);
  const Basis& b = basis(n);
  auto psi = psi_vector(n);
  const Basis& bk = basis(k);
  std::vector<std::pair<std::vector<int>, BigInt>> row;  // (a, Ct[pi0,a])
  if (k == 0) {
    row.emplace_back(std::vector<int>{}, 1);
  } else {
    const ZMatrix& ct = c_tilde(k);
    int ri = bk.index(pi0);
    for (int c = 0; c < bk.dim(); ++c)
      if (sgn(ct(ri, c)) != 0) row.emplace_back(bk[c].openers(), ct(ri, c));
  }
  const int free = n - k - 1;
  BigInt total_lhs = 0, total_rhs = 0;
  for (unsigned mask = 0; mask < (1u << free); ++mask) {
    // full-length sequence; positions 1..k+1 are unused by parity_class
    std::vector<int> bfull(n, 0);
    for (int j = k + 2; j <= n; ++j) bfull[j - 1] = (mask >> (j - k - 2)) & 1 ? 2 * j - 1 : 2 * j - 2;
    BigInt lhs = 0;
    for (int i = 0; i < b.dim(); ++i)
      if (is_submatching(pi0, b[i], 2) && parity_class(b[i], bfull, k + 2)) lhs += psi[i];
    BigInt rhs = 0;
    for (auto& [a, c] : row) {
      std::vector<int> seq{1};
      for (int x : a) seq.push_back(1 + x);
      for (int j = k + 2; j <= n; ++j) seq.push_back(bfull[j - 1]);
      rhs += c * phi_eval1(seq);
    }
    std::vector<int> bvec(bfull.begin() + k + 1, bfull.end());
    r.expect(lhs == rhs, "b=" + seq_str(bvec) + " lhs=" + lhs.get_str() + " rhs=" + rhs.get_str());
    total_lhs += lhs;
    total_rhs += rhs;
  }
  r.expect(total_lhs == total_rhs, "b-summed lhs=" + total_lhs.get_str() + " rhs=" + total_rhs.get_str());
  return r;
}

Report verify_ev1_expansion(int n) {
  Report r;
  r.name = "ev1 expansion n=" + std::to_string(n);
  const Basis& b = basis(n);
  const ZMatrix& c = c_matrix(n);
  const Stationary& st = stationary(n);
  for (int i = 0; i < b.dim(); ++i) {
    auto a = b[i].openers();
    BigRational s = 0;
    for (int j = 0; j < b.dim(); ++j)
      if (sgn(c(i, j)) != 0) s += BigRational(c(i, j)) * st.mu[j];
    s *= BigRational(st.asm_n);
    BigInt lhs = phi_eval1(a);
    r.expect(BigRational(lhs) == s, "a=" + seq_str(a) + " phi=" + lhs.get_str() + " ASM*sum=" + to_string(s));
  }
  return r;
}

Report verify_p_nesting(int n, int p) {
  Report r;
  r.name = "p-nesting n=" + std::to_string(n) + " p=" + std::to_string(p);
  const Basis& small = basis(n);
  const Basis& big = basis(n + p);
  const ZMatrix& c = c_matrix(n);
  const ZMatrix& cb = c_matrix(n + p);
  const ZMatrix& ct = c_tilde(n);
  const ZMatrix& ctb = c_tilde(n + p);
  // index of mu in NC_n when mu is a p-nesting, else -1
  std::vector<int> unnest(big.dim(), -1);
  for (int i = 0; i < small.dim(); ++i) unnest[big.index(nest(small[i], p))] = i;
  for (int s = 0; s < small.dim(); ++s) {
    int row = big.index(nest(small[s], p));
    for (int m = 0; m < big.dim(); ++m) {
      BigInt want = unnest[m] >= 0 ? c(s, unnest[m]) : BigInt(0);
      BigInt want_t = unnest[m] >= 0 ? ct(s, unnest[m]) : BigInt(0);
      r.expect(cb(row, m) == want, "C row " + small[s].to_json() + " col " + big[m].to_json());
      r.expect(ctb(row, m) == want_t, "Ct row " + small[s].to_json() + " col " + big[m].to_json());
    }
  }
  return r;
}

Report verify_c_recursion(int n) {
  Report r;
  r.name = "C closed form vs recursion n=" + std::to_string(n);
  const Basis& b = basis(n);
  for (int i = 0; i < b.dim(); ++i) {
    auto a = b[i].openers();
    for (int j = 0; j < b.dim(); ++j) {
      int want = c_entry(a, b[j]);
      for (int choice : {0, -1})
        r.expect(c_entry_recursive(a, b[j], choice) == want,
                 "a=" + seq_str(a) + " sigma=" + b[j].to_json() + " arc choice " + std::to_string(choice));
    }
  }
  return r;
}

Report verify_triangularity(int n) {
  Report r;
  r.name = "C triangular n=" + std::to_string(n);
  const Basis& b = basis(n);
  const ZMatrix& c = c_matrix(n);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      if (i == j) {
        r.expect(c(i, j) == 1, "diagonal at " + b[i].to_json());
      } else if (sgn(c(i, j)) != 0) {
        r.expect(precedes(b[j], b[i]), "entry outside order at " + b[i].to_json() + "," + b[j].to_json());
      }
    }
  return r;
}

}  // namespace wheelperc
