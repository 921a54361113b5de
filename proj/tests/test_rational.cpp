#include "doctest.h"
#include "wheelperc/rational.hpp"

using namespace wheelperc;

TEST_CASE("rational strings") {
  BigRational x(6, 4);
  x.canonicalize();
  CHECK(to_string(x) == "3/2");
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK(to_string(make_rational(3, -6)) == "-1/2");
  CHECK(parse_rational("-97/512") == BigRational(-97, 512));
  CHECK(parse_rational("10/4") == BigRational(5, 2));
  CHECK(is_canonical(parse_rational("10/4")));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("binomials and factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(3, 5) == 0);
  // Pascal rule as an oracle
  for (long n = 1; n < 20; ++n)
    for (long k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1));
  CHECK(pow(BigRational(2, 3), 3) == BigRational(8, 27));
}

TEST_CASE("eisenstein arithmetic") {
  Eisenstein q = Eisenstein::q();
  Eisenstein one(1);
  CHECK(q * q * q == one);
  CHECK((one + q + q * q).is_zero());
  CHECK(Eisenstein::q_power(-1) == q * q);
  CHECK(Eisenstein::q_power(5) == q * q);
  Eisenstein z(BigRational(3, 2), BigRational(-7, 5));
  CHECK(z * z.inverse() == one);
  CHECK(z / z == one);
  // norm is z times its conjugate
  CHECK(z * z.conj() == Eisenstein(z.norm()));
  CHECK_THROWS(Eisenstein().inverse());
}
