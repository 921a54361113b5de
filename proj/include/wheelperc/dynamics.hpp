#pragma once

#include <vector>

#include "wheelperc/linalg.hpp"
#include "wheelperc/matchings.hpp"
#include "wheelperc/rational.hpp"
#include "wheelperc/report.hpp"

namespace wheelperc {

// prod_{j=0}^{n-1} (3j+1)!/(n+j)!
BigInt asm_count(int n);

// S[pi,sigma] = #{k : e_k(pi) = sigma}, indexed by basis(n)
SparseIntMatrix s_matrix(int n);
// H = 2n I - S
SparseIntMatrix hamiltonian(int n);

struct Stationary {
  int n = 0;
  BigInt asm_n;
  std::vector<BigRational> mu;  // basis(n) order
  std::vector<BigInt> alpha;    // mu * ASM(n)
};

// Exact mu_n from mu H = 0, sum 1. Memoized in-process.
const Stationary& stationary(int n);

// bits[k-1] in {0,1}, k = 1..2n
using PlaquetteRow = std::vector<int>;

// Pairing on 4n points: 1..2n are the lower ends (glued to the old
// boundary), 2n+1..4n the new boundary points. 1-based partner vector.
std::vector<int> row_diagram(const PlaquetteRow& row);
Matching apply_row(const PlaquetteRow& row, const Matching& pi);
Matching apply_row_diagram(const std::vector<int>& diagram, const Matching& pi);
PlaquetteRow unit_row(int n, int k);  // single 1 at position k

// Entry (i,j) is a polynomial in p, ascending coefficients (integers).
struct TransferMatrix {
  int n = 0;
  int dim = 0;
  std::vector<UPoly> entries;  // row-major
  const UPoly& at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }
};

TransferMatrix transfer_matrix(int n);  // n <= 6
QMatrix transfer_at(const TransferMatrix& t, const BigRational& p);
QMatrix transfer_at(int n, const BigRational& p);
QMatrix derivative_at_zero(const TransferMatrix& t);
QMatrix rotation_matrix(int n);  // R[pi, rotate(pi)] = 1

// sum alpha = ASM(n), min 1 at pi_min, max ASM(n-1) at pi_max, rotation invariance
Report verify_sum_rules(int n);
Report verify_hamiltonian(int n);              // mu H = 0
Report verify_transfer_stationarity(int n);    // mu T(p) = mu, p in {1/4, 1/2, 3/4}
Report verify_transfer_commuting(int n);       // T(1/3) T(1/5) = T(1/5) T(1/3)
Report verify_row_operators(int n);            // f_0 = rotate, f_{unit k} = rotate o e_k
Report verify_generator(int n);                // dT/dp at 0 = (S - 2n I) R

}  // namespace wheelperc
