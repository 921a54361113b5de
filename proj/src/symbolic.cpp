#include "wheelperc/symbolic.hpp"

#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

#include "wheelperc/modarith.hpp"

namespace wheelperc {

void WheelPolySymbolic::add(const std::vector<int>& e, const Eisenstein& c) {
  if (c.is_zero()) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

bool WheelPolySymbolic::homogeneous(int* degree) const {
  int d = -1;
  for (auto& [e, c] : terms) {
    int s = 0;
    for (int x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  if (degree) *degree = d;
  return true;
}

Eisenstein WheelPolySymbolic::eval(const std::vector<Eisenstein>& z) const {
  if (static_cast<int>(z.size()) != nvars()) throw std::invalid_argument("eval: wrong number of variables");
  int maxe = 0;
  for (auto& [e, c] : terms)
    for (int x : e) maxe = std::max(maxe, x);
  std::vector<std::vector<Eisenstein>> pw(z.size());
  for (size_t v = 0; v < z.size(); ++v) {
    pw[v].push_back(Eisenstein(1));
    for (int k = 1; k <= maxe; ++k) pw[v].push_back(pw[v].back() * z[v]);
  }
  Eisenstein s;
  for (auto& [e, c] : terms) {
    Eisenstein t = c;
    for (size_t v = 0; v < e.size(); ++v)
      if (e[v]) t *= pw[v][e[v]];
    s += t;
  }
  return s;
}

bool WheelPolySymbolic::operator==(const WheelPolySymbolic& o) const { return n == o.n && terms == o.terms; }

WheelPolySymbolic WheelPolySymbolic::operator-(const WheelPolySymbolic& o) const {
  WheelPolySymbolic r = *this;
  for (auto& [e, c] : o.terms) r.add(e, -c);
  return r;
}

WheelPolySymbolic WheelPolySymbolic::scaled(const Eisenstein& c) const {
  WheelPolySymbolic r;
  r.n = n;
  if (c.is_zero()) return r;
  for (auto& [e, v] : terms) r.terms.emplace(e, v * c);
  return r;
}

static WheelPolySymbolic multiply(const WheelPolySymbolic& p, const WheelPolySymbolic& q) {
  WheelPolySymbolic r;
  r.n = p.n;
  for (auto& [e1, c1] : p.terms)
    for (auto& [e2, c2] : q.terms) {
      std::vector<int> e(e1.size());
      for (size_t v = 0; v < e.size(); ++v) e[v] = e1[v] + e2[v];
      r.add(e, c1 * c2);
    }
  return r;
}

// q z_i - q^-1 z_j, 1-based
static WheelPolySymbolic step_factor(int n, int i, int j) {
  WheelPolySymbolic f;
  f.n = n;
  std::vector<int> e(2 * n, 0);
  e[i - 1] = 1;
  f.add(e, Eisenstein::q());
  e[i - 1] = 0;
  e[j - 1] = 1;
  f.add(e, -Eisenstein::q_power(-1));
  return f;
}

WheelPolySymbolic psi_min_symbolic(int n) {
  if (n < 1) throw std::invalid_argument("psi_min_symbolic: n must be positive");
  WheelPolySymbolic p;
  p.n = n;
  p.add(std::vector<int>(2 * n, 0), Eisenstein(1));
  for (int half = 0; half < 2; ++half)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) p = multiply(p, step_factor(n, half * n + i, half * n + j));
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  BigRational s = 1 / pow(BigRational(3), static_cast<unsigned>(pairs));
  if (pairs % 2) s = -s;
  return p.scaled(Eisenstein(s));
}

WheelPolySymbolic divided_difference(const WheelPolySymbolic& p, int j) {
  if (j < 1 || j >= p.nvars()) throw std::out_of_range("divided_difference: j out of range");
  WheelPolySymbolic r;
  r.n = p.n;
  const int u = j - 1, v = j;
  for (auto& [e, c] : p.terms) {
    const int a = e[u], b = e[v];
    if (a == b) continue;
    // (z_j^b z_{j+1}^a - z_j^a z_{j+1}^b) / (z_{j+1} - z_j)
    const int lo = std::min(a, b), d = std::abs(a - b);
    const Eisenstein sc = a > b ? c : -c;
    std::vector<int> m = e;
    for (int t = 0; t < d; ++t) {
      m[u] = lo + d - 1 - t;
      m[v] = lo + t;
      r.add(m, sc);
    }
  }
  return r;
}

WheelPolySymbolic times_step_factor(const WheelPolySymbolic& p, int j) {
  return multiply(p, step_factor(p.n, j, j + 1));
}

Eisenstein sigma_evaluation(const WheelPolySymbolic& p, const Matching& sigma) {
  if (sigma.order() != p.n) throw std::invalid_argument("sigma_evaluation: order mismatch");
  std::vector<Eisenstein> z;
  for (int s : sigma.steps()) z.push_back(Eisenstein::q_power(-s));
  return p.eval(z);
}

Eisenstein one_evaluation(const WheelPolySymbolic& p) {
  return p.eval(std::vector<Eisenstein>(p.nvars(), Eisenstein(1)));
}

static std::unique_ptr<PsiFamily> compute_family(int n) {
  const Basis& b = basis(n);
  auto fam = std::make_unique<PsiFamily>();
  fam->n = n;
  fam->psi.resize(b.dim());
  std::vector<char> done(b.dim(), 0);
  std::vector<int> order(b.dim());
  for (int i = 0; i < b.dim(); ++i) order[i] = i;
  auto boxes = [&](int i) {
    int s = 0;
    for (int x : young(b[i])) s += x;
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return boxes(x) < boxes(y); });
  const int lo = b.index(pi_min(n));
  fam->psi[lo] = psi_min_symbolic(n);
  done[lo] = 1;
  for (int pi : order) {
    if (done[pi]) continue;
    bool have = false;
    for (int sg = 0; sg < b.dim(); ++sg) {
      auto j = covers_at(b[sg], b[pi]);
      if (!j) continue;
      if (!done[sg]) throw std::logic_error("psi_family: predecessor not built");
      WheelPolySymbolic cand = times_step_factor(divided_difference(fam->psi[sg], *j), *j);
      for (int nu = 0; nu < b.dim(); ++nu) {
        if (nu == pi || nu == sg || apply_e(*j, b[nu]) != b[sg]) continue;
        if (!done[nu]) throw std::logic_error("psi_family: preimage " + b[nu].to_json() + " not built");
        cand = cand - fam->psi[nu];
      }
      ++fam->routes;
      if (!have) {
        fam->psi[pi] = std::move(cand);
        have = true;
      } else if (!(cand == fam->psi[pi])) {
        fam->disagreements.push_back(b[pi].to_json() + " via " + b[sg].to_json() + " j=" + std::to_string(*j));
      }
    }
    if (!have) throw std::logic_error("psi_family: no box route to " + b[pi].to_json());
    done[pi] = 1;
  }
  return fam;
}

const PsiFamily& psi_family(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("psi_family: n must be in 1..4");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<PsiFamily>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[n];
  if (!slot) slot = compute_family(n);
  return *slot;
}

WheelPolySymbolic build_psi_symbolic(const Matching& pi) {
  const PsiFamily& f = psi_family(pi.order());
  return f.psi[basis(pi.order()).index(pi)];
}

namespace {

// p = 1 mod 3 and a primitive cube root of unity w, so a + bq maps to a + bw
struct CubeField {
  mod::u64 p = 0, w = 0;
};

const CubeField& cube_field() {
  static const CubeField f = [] {
    CubeField c;
    for (int i = 0;; ++i) {
      mod::u64 p = mod::prime(i);
      if (p % 3 != 1) continue;
      for (mod::u64 x = 2;; ++x) {
        mod::u64 w = mod::pow(x, (p - 1) / 3, p);
        if (w != 1) {
          c.p = p;
          c.w = w;
          return c;
        }
      }
    }
  }();
  return f;
}

mod::u64 reduce_q(const BigRational& x, mod::u64 p) {
  return mod::mul(mod::reduce(x.get_num(), p), mod::inv(mod::reduce(x.get_den(), p), p), p);
}

mod::u64 reduce_q(const Eisenstein& x, const CubeField& f) {
  return mod::add(reduce_q(x.a(), f.p), mod::mul(reduce_q(x.b(), f.p), f.w, f.p), f.p);
}

}  // namespace

Report check_wheel_condition(const WheelPolySymbolic& p, std::uint64_t seed, int points_per_triple,
                             const std::string& label) {
  Report r;
  r.name = "wheel condition " + label;
  // exact rational points, evaluated modulo a 62-bit prime: a nonzero residue
  // is a certain failure, a false zero has probability about deg/p
  const CubeField& f = cube_field();
  std::vector<std::pair<std::vector<int>, mod::u64>> terms;
  int maxe = 0;
  for (auto& [e, c] : p.terms) {
    terms.emplace_back(e, reduce_q(c, f));
    for (int x : e) maxe = std::max(maxe, x);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
  const int m = p.nvars();
  std::vector<std::vector<mod::u64>> pw(m, std::vector<mod::u64>(maxe + 1));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      for (int k = j + 1; k <= m; ++k)
        for (int t = 0; t < points_per_triple; ++t) {
          std::vector<mod::u64> z(m);
          for (auto& x : z) x = reduce_q(BigRational(num(rng), den(rng)), f.p);
          z[j - 1] = mod::mul(z[i - 1], mod::mul(f.w, f.w, f.p), f.p);
          z[k - 1] = mod::mul(z[i - 1], f.w, f.p);
          for (int v = 0; v < m; ++v) {
            pw[v][0] = 1;
            for (int d = 1; d <= maxe; ++d) pw[v][d] = mod::mul(pw[v][d - 1], z[v], f.p);
          }
          mod::u64 s = 0;
          for (auto& [e, c] : terms) {
            mod::u64 x = c;
            for (int v = 0; v < m; ++v)
              if (e[v]) x = mod::mul(x, pw[v][e[v]], f.p);
            s = mod::add(s, x, f.p);
          }
          r.expect(s == 0, "triple " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
        }
  return r;
}

Report verify_psi_symbolic(int n, long sample_pairs, std::uint64_t seed) {
  Report r;
  r.name = "symbolic Psi n=" + std::to_string(n);
  const PsiFamily& fam = psi_family(n);
  for (auto& d : fam.disagreements) r.expect(false, "box order disagreement at " + d);
  const Basis& b = basis(n);
  auto psi = psi_vector(n);
  for (int i = 0; i < b.dim(); ++i) {
    int deg = 0;
    const auto& p = fam.psi[i];
    bool h = p.homogeneous(&deg);
    r.expect(h && deg == n * (n - 1), "degree of Psi at " + b[i].to_json());
    r.expect(one_evaluation(p) == Eisenstein(BigRational(psi[i])),
             "Psi(1) at " + b[i].to_json() + " = " + one_evaluation(p).str() + " vs psi " + psi[i].get_str());
    Report w = check_wheel_condition(p, seed + i, 5, b[i].to_json());
    r.checked += w.checked;
    for (auto& m : w.mismatches) r.mismatches.push_back(w.name + " " + m);
  }
  auto pair_check = [&](int i, int j) {
    Eisenstein v = sigma_evaluation(fam.psi[i], b[j]);
    r.expect(v == Eisenstein(i == j ? 1 : 0), "Psi_" + b[i].to_json() + "(" + b[j].to_json() + ") = " + v.str());
  };
  if (sample_pairs <= 0) {
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) pair_check(i, j);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, b.dim() - 1);
    for (int i = 0; i < b.dim(); ++i) pair_check(i, i);
    for (long s = 0; s < sample_pairs; ++s) pair_check(pick(rng), pick(rng));
  }
  return r;
}

}  // namespace wheelperc
