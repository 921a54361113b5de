#include "doctest.h"
#include "wheelperc/dynamics.hpp"

using namespace wheelperc;

TEST_CASE("asm counts") {
  const long want[] = {1, 2, 7, 42, 429, 7436, 218348, 10850216};
  for (int n = 1; n <= 8; ++n) CHECK(asm_count(n) == want[n - 1]);
}

TEST_CASE("stationary n=3 by hand") {
  const auto& st = stationary(3);
  // order: 12-34-56, 12-36-45, 14-23-56, 16-23-45, 16-25-34
  std::vector<BigInt> want{2, 1, 1, 2, 1};
  CHECK(st.alpha == want);
  CHECK(st.mu[0] == BigRational(2, 7));
}

TEST_CASE("stationarity checked directly from apply_e") {
  for (int n = 1; n <= 5; ++n) {
    const auto& st = stationary(n);
    const Basis& b = basis(n);
    // (mu S)[sigma] = 2n mu[sigma]
    std::vector<BigRational> flow(b.dim());
    for (int i = 0; i < b.dim(); ++i)
      for (int k = 1; k <= 2 * n; ++k) flow[b.index(apply_e(k, b[i]))] += st.mu[i];
    for (int i = 0; i < b.dim(); ++i) CHECK(flow[i] == 2 * n * st.mu[i]);
  }
}

TEST_CASE("transfer matrices are stochastic") {
  for (int n = 1; n <= 4; ++n) {
    QMatrix t = transfer_at(n, BigRational(2, 7));
    for (int i = 0; i < t.rows; ++i) {
      BigRational s = 0;
      for (int j = 0; j < t.cols; ++j) {
        CHECK(t(i, j) >= 0);
        s += t(i, j);
      }
      CHECK(s == 1);
    }
  }
}

TEST_CASE("plaquette rows") {
  for (int n = 1; n <= 3; ++n)
    for (auto& p : basis(n).list()) {
      CHECK(apply_row(PlaquetteRow(2 * n, 0), p) == rotate(p));
      for (int k = 1; k <= 2 * n; ++k) CHECK(apply_row(unit_row(n, k), p) == rotate(apply_e(k, p)));
    }
}

TEST_CASE("verification reports") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(verify_sum_rules(n).ok());
    CHECK(verify_hamiltonian(n).ok());
  }
  for (int n = 1; n <= 4; ++n) {
    CHECK(verify_transfer_stationarity(n).ok());
    CHECK(verify_transfer_commuting(n).ok());
    CHECK(verify_row_operators(n).ok());
    CHECK(verify_generator(n).ok());
  }
}
