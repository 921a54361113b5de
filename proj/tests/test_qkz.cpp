#include "doctest.h"
#include "wheelperc/qkz.hpp"

using namespace wheelperc;

TEST_CASE("chi") {
  CHECK(chi(0) == 0);
  CHECK(chi(1) == 1);
  CHECK(chi(2) == -1);
  CHECK(chi(-1) == -1);
  for (long p = -7; p <= 7; ++p) CHECK(chi_eisenstein(p) == Eisenstein(chi(p)));
}

TEST_CASE("C closed form agrees with recursion") {
  for (int n = 1; n <= 4; ++n)
    for (auto& pi : basis(n).list())
      for (auto& s : basis(n).list())
        for (int choice : {0, 1, -1}) CHECK(c_entry(pi.openers(), s) == c_entry_recursive(pi.openers(), s, choice));
}

TEST_CASE("C tilde is the inverse") {
  for (int n = 1; n <= 5; ++n) CHECK(multiply(c_matrix(n), c_tilde(n)) == ZMatrix::identity(basis(n).dim()));
}

TEST_CASE("f polynomials for small events") {
  auto f = [](const char* s) { return f_polynomial(parse_matching(s)); };
  CHECK(f("[[1,2]]") == SparseMultiPoly::monomial(1, {1}));
  CHECK(f("[[1,2],[3,4]]") == SparseMultiPoly::monomial(2, {1, 1}));
  CHECK(f("[[1,4],[2,3]]") == SparseMultiPoly::monomial(2, {1, 2}));
  // every monomial satisfies 1 <= 2j - a_j
  for (int k = 1; k <= 4; ++k)
    for (auto& pi0 : basis(k).list())
      for (auto& [e, c] : f_polynomial(pi0).terms)
        for (int x : e) CHECK(x >= 1);
}

TEST_CASE("psi vector is ASM(n) mu") {
  CHECK(psi_vector(3) == std::vector<BigInt>{2, 1, 1, 2, 1});
}

TEST_CASE("expansion reports") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(verify_product_expansion(n).ok());
    CHECK(verify_ev1_expansion(n).ok());
    CHECK(verify_triangularity(n).ok());
  }
  for (int n = 1; n <= 4; ++n) {
    CHECK(verify_c_recursion(n).ok());
    CHECK(verify_p_nesting(n, 1).ok());
  }
  CHECK(verify_submatching_expansion(parse_matching("[[1,2]]"), 4).ok());
  CHECK(verify_submatching_expansion(parse_matching("[[1,4],[2,3]]"), 4).ok());
}
