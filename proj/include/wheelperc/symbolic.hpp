#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wheelperc/matchings.hpp"
#include "wheelperc/qkz.hpp"
#include "wheelperc/rational.hpp"

namespace wheelperc {

// Polynomial in z_1..z_{2n} with coefficients in Q(q). Small n only.
struct WheelPolySymbolic {
  int n = 0;
  std::map<std::vector<int>, Eisenstein> terms;

  int nvars() const { return 2 * n; }
  void add(const std::vector<int>& e, const Eisenstein& c);
  bool is_zero() const { return terms.empty(); }
  bool homogeneous(int* degree = nullptr) const;
  Eisenstein eval(const std::vector<Eisenstein>& z) const;
  bool operator==(const WheelPolySymbolic& o) const;
  WheelPolySymbolic operator-(const WheelPolySymbolic& o) const;
  WheelPolySymbolic scaled(const Eisenstein& c) const;
};

WheelPolySymbolic psi_min_symbolic(int n);
// (p(.., z_{j+1}, z_j, ..) - p) / (z_{j+1} - z_j), 1-based j
WheelPolySymbolic divided_difference(const WheelPolySymbolic& p, int j);
// (q z_j - q^-1 z_{j+1}) p
WheelPolySymbolic times_step_factor(const WheelPolySymbolic& p, int j);

Eisenstein sigma_evaluation(const WheelPolySymbolic& p, const Matching& sigma);  // z_k = q^{-sigma_k}
Eisenstein one_evaluation(const WheelPolySymbolic& p);

// All Psi_pi for one n, basis(n) order. Every (sigma, j) with sigma -> pi is
// tried; disagreements between routes are listed.
struct PsiFamily {
  int n = 0;
  std::vector<WheelPolySymbolic> psi;
  long routes = 0;
  std::vector<std::string> disagreements;
};
const PsiFamily& psi_family(int n);  // n <= 4, memoized
WheelPolySymbolic build_psi_symbolic(const Matching& pi);

// Substitutes z_j = q^2 z_i, z_k = q z_i with the rest random rationals.
Report check_wheel_condition(const WheelPolySymbolic& p, std::uint64_t seed, int points_per_triple = 5,
                             const std::string& label = "");

// Duality Psi_pi(sigma) = delta, degree n(n-1), wheel zeros, Psi(1) = psi.
// sample_pairs = 0 means all pairs.
Report verify_psi_symbolic(int n, long sample_pairs = 0, std::uint64_t seed = 1);

}  // namespace wheelperc
