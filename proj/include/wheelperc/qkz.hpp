#pragma once

#include <string>
#include <vector>

#include "wheelperc/ct.hpp"
#include "wheelperc/linalg.hpp"
#include "wheelperc/matchings.hpp"
#include "wheelperc/rational.hpp"
#include "wheelperc/report.hpp"

namespace wheelperc {

int chi(long p);                   // 0, 1, -1 by p mod 3
Eisenstein chi_eisenstein(long p);  // (q^p - q^-p)/(q - q^-1)

// prod over arcs j<k of sigma of chi(#{m : j <= a_m < k} - (k-j-1)/2)
int c_entry(const std::vector<int>& a, const Matching& sigma);
// Same value through the little-arc recurrence. arc_choice picks which
// little arc of sigma to delete (0 = leftmost, -1 = rightmost, taken modulo the count).
int c_entry_recursive(const std::vector<int>& a, const Matching& sigma, int arc_choice = 0);

// Rows and columns in basis(n) order; row pi uses a = openers(pi). Memoized.
const ZMatrix& c_matrix(int n);
const ZMatrix& c_tilde(int n);

// sum_a Ct[pi0, a] prod_j w_j^{2j - a_j}, in order(pi0) variables
SparseMultiPoly f_polynomial(const Matching& pi0);

std::vector<BigInt> psi_vector(int n);  // ASM(n) * mu_n
std::vector<BigInt> phi_vector(int n);  // C * psi

std::vector<std::vector<int>> b_set(int n);  // B_n
Report verify_product_expansion(int n);
Report verify_submatching_expansion(const Matching& pi0, int n);
Report verify_ev1_expansion(int n);
Report verify_p_nesting(int n, int p);
Report verify_c_recursion(int n);
Report verify_triangularity(int n);

}  // namespace wheelperc
