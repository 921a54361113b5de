#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wheelperc {

using BigInt = mpz_class;
using BigRational = mpq_class;

// "p/q", or "p" when q == 1
std::string to_string(const BigRational& x);
std::string to_string(const BigInt& x);
BigRational parse_rational(const std::string& s);
BigRational make_rational(const BigInt& num, const BigInt& den);

bool is_canonical(const BigRational& x);
BigInt factorial(unsigned n);
BigInt binomial(long top, long bottom);
BigRational pow(const BigRational& x, unsigned e);

// a + b*q with q a primitive cube root of unity, q^2 = -1 - q
class Eisenstein {
 public:
  Eisenstein() = default;
  Eisenstein(BigRational a, BigRational b = 0) : a_(std::move(a)), b_(std::move(b)) {}
  static Eisenstein q() { return Eisenstein(0, 1); }
  static Eisenstein q_power(long p);

  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }

  Eisenstein operator+(const Eisenstein& o) const { return {a_ + o.a_, b_ + o.b_}; }
  Eisenstein operator-(const Eisenstein& o) const { return {a_ - o.a_, b_ - o.b_}; }
  Eisenstein operator-() const { return {-a_, -b_}; }
  Eisenstein operator*(const Eisenstein& o) const;
  Eisenstein operator/(const Eisenstein& o) const;
  Eisenstein& operator+=(const Eisenstein& o);
  Eisenstein& operator-=(const Eisenstein& o);
  Eisenstein& operator*=(const Eisenstein& o);
  bool operator==(const Eisenstein& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Eisenstein& o) const { return !(*this == o); }

  Eisenstein conj() const { return {a_ - b_, -b_}; }
  BigRational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  Eisenstein inverse() const;
  std::string str() const;

 private:
  BigRational a_, b_;
};

}  // namespace wheelperc
