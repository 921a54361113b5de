#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <vector>

#include "wheelperc/linalg.hpp"
#include "wheelperc/rational.hpp"

namespace wheelperc {

// Polynomial in z_1..z_nvars (index 0 is z_1) with big integer coefficients.
struct SparseMultiPoly {
  int nvars = 0;
  std::map<std::vector<int>, BigInt> terms;
  std::vector<int> bounds;  // per-variable max exponent; empty or -1 means unbounded

  SparseMultiPoly() = default;
  explicit SparseMultiPoly(int nv) : nvars(nv) {}
  static SparseMultiPoly constant(int nv, const BigInt& c);
  static SparseMultiPoly monomial(int nv, const std::vector<int>& e, const BigInt& c = 1);

  bool admits(const std::vector<int>& e) const;
  void add(const std::vector<int>& e, const BigInt& c);
  BigInt coefficient(const std::vector<int>& e) const;
  int top_var() const;  // highest variable with a positive exponent, -1 for constants
  int max_exponent(int v) const;
  BigInt l1_norm() const;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const SparseMultiPoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

SparseMultiPoly multiply(const SparseMultiPoly& p, const SparseMultiPoly& q);
SparseMultiPoly truncated_multiply(const SparseMultiPoly& p, const SparseMultiPoly& q, const std::vector<int>& bounds);
SparseMultiPoly operator+(const SparseMultiPoly& p, const SparseMultiPoly& q);

// (z_j - z_i)(1 + z_j + z_i z_j), 0-based i < j
SparseMultiPoly pair_factor(int nvars, int i, int j);
SparseMultiPoly one_plus(int nvars, int j);

// Called after each elimination step with the variable just extracted and
// the surviving polynomial.
using EmitFn = std::function<void(int var, const SparseMultiPoly& cur)>;

// Coefficient of prod z_v^{t_v} in prod(factors), descending elimination.
BigInt extract_coefficient(const std::vector<SparseMultiPoly>& factors, const std::vector<int>& targets,
                           const EmitFn& emit = nullptr);
// Full expansion, then lookup. Test oracle.
BigInt extract_coefficient_naive(const std::vector<SparseMultiPoly>& factors, const std::vector<int>& targets);

// Coefficient of prod z_v^{t_v} in F * Omega_n * prod_{v : one_plus[v]} (1 + z_v),
// Omega_n = prod_{i<j} (z_j - z_i)(1 + z_j + z_i z_j). F has nvars == n.
// Dense kernel modulo 62-bit primes, CRT against an L1 bound.
struct OmegaProblem {
  int n = 0;
  SparseMultiPoly f;
  std::vector<char> one_plus;
  std::vector<int> targets;
};
BigInt omega_coefficient(const OmegaProblem& pr);
// Same product as explicit factor list for the sparse routes.
std::vector<SparseMultiPoly> omega_factors(const OmegaProblem& pr);

BigInt asm_via_ct(int n);
BigInt phi_eval1(const std::vector<int>& a);  // a in the weak set A_n

// F in k variables w_1..w_k, placed at z_2..z_{k+1}
OmegaProblem submatching_problem(const SparseMultiPoly& f, int n);
BigInt submatching_coefficient(const SparseMultiPoly& f, int n);

// Structured denominator prod_{j=1}^k (4n^2 - (2j-1)^2)^{k+1-j}
BigInt event_denominator(int k, long n);

struct ProbeReport {
  std::vector<int> a;
  int k = 0;
  int degree_m = 0;  // fitted degree bound in m = n^2
  std::vector<long> fit_nodes;
  std::vector<long> held_out;
  std::vector<BigRational> values;  // R(n) per requested n, same order as n_values
  std::vector<long> n_values;
  UPoly numerator_m;                // P as a polynomial in m = n^2
  std::vector<bool> held_out_ok;
  bool all_ok = false;
  bool dyadic = false;
};
ProbeReport conjecture_probe(const std::vector<int>& a, const std::vector<long>& n_values);

std::string poly_in_n(const UPoly& in_m);  // writes P(m) with m = n^2 as a polynomial in n
bool is_dyadic(const BigRational& x);

}  // namespace wheelperc
