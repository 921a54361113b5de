#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wheelperc/linalg.hpp"
#include "wheelperc/matchings.hpp"
#include "wheelperc/qkz.hpp"
#include "wheelperc/rational.hpp"

namespace wheelperc {

struct EventProbability {
  BigRational value;
  std::string route;  // brute, ct, closed-form, interpolated
};

inline constexpr int kBruteMaxN = 7;
inline constexpr int kCtMaxN = 11;

// Sum of mu_pi over pi whose restriction to [offset, offset+2k-1] is pi0.
EventProbability prob_submatching_brute(const Matching& pi0, int n, int offset = 1, int max_n = kBruteMaxN);
EventProbability prob_submatching_ct(const Matching& pi0, int n, int max_n = kCtMaxN);
// Generic brute probability of a predicate on NC_n.
BigRational prob_brute(int n, const std::function<bool(const Matching&)>& event, int max_n = kBruteMaxN);

// R_k as a rational function of n: numerator and denominator polynomials in n
struct RationalFunction {
  UPoly num, den;
  BigRational at(const BigRational& n) const;
  BigRational limit() const;  // ratio of leading coefficients, degrees must match
};
RationalFunction r_k(int k);

bool anti_cluster(const Matching& p, int k);  // no two of 1..k matched
EventProbability anti_cluster_prob(int k, int n);
BigRational anti_cluster_brute(int k, int n);

// Determinant sum for k nested arcs at 1..2k. Calibrated: matrix size n-k-1.
EventProbability nested_arcs_prob(int k, int n);
Report nested_arcs_calibration(int max_n = 6);

struct RationalEventFunction {
  Matching pi0;
  int k = 0;
  std::vector<long> nodes;
  long witness = 0;
  bool witness_ok = false;
  UPoly g;        // G(m), Q(n) = G(n^2)
  bool dyadic = false;
  BigInt denominator_at(long n) const;  // prod (4n^2 - (2j-1)^2)^{k+1-j}
  BigRational value_at(long n) const;   // Q(n) / denominator
  BigRational leading() const;          // leading coefficient of Q
  std::string q_string() const;         // Q as polynomial in n
};
RationalEventFunction interpolate_Q(const Matching& pi0);

EventProbability halfplane_prob(const Matching& pi0);
EventProbability halfplane_prob(const RationalEventFunction& q);
EventProbability halfplane_anticluster(int k);

// Closed forms quoted for specific events, used as oracles
BigRational arc_formula(long n);           // (3/2)(n^2+1)/(4n^2-1)
BigRational identity97(long n);            // 12-34
BigRational identity59(long n);            // 14-23
BigRational six_point_formula(long n);     // 12-34-56
BigRational identity_12_45(long n);        // 1~2 and 4~5, from R_5 and inclusion-exclusion
BigRational identity_12_45_printed(long n);  // the displayed form; agrees only at n = 3
BigRational ac4_formula(long n);
BigRational ac5_printed(long n);           // the displayed AC_5 expression

Report inclusion_exclusion_checks(int n);
// The displayed AC5 and 12-45 expressions against brute; these fail for n >= 4.
Report printed_display_checks(int n);
Report route_agreement(int k_max, int n_max);

}  // namespace wheelperc
