#include "wheelperc/rational.hpp"

#include <stdexcept>

namespace wheelperc {

std::string to_string(const BigRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const BigInt& x) { return x.get_str(); }

BigRational parse_rational(const std::string& s) {
  BigRational r;
  if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

bool is_canonical(const BigRational& x) {
  if (x.get_den() <= 0) return false;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return g == 1;
}

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(long top, long bottom) {
  if (bottom < 0 || top < 0 || bottom > top) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return r;
}

BigRational pow(const BigRational& x, unsigned e) {
  BigRational r = 1;
  BigRational b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Eisenstein Eisenstein::q_power(long p) {
  long m = ((p % 3) + 3) % 3;
  if (m == 0) return Eisenstein(1, 0);
  if (m == 1) return Eisenstein(0, 1);
  return Eisenstein(-1, -1);
}

Eisenstein Eisenstein::operator*(const Eisenstein& o) const {
  // (a + bq)(c + dq) = ac + (ad + bc) q + bd q^2, q^2 = -1 - q
  BigRational bd = b_ * o.b_;
  return {a_ * o.a_ - bd, a_ * o.b_ + b_ * o.a_ - bd};
}

Eisenstein& Eisenstein::operator+=(const Eisenstein& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

Eisenstein& Eisenstein::operator-=(const Eisenstein& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

Eisenstein& Eisenstein::operator*=(const Eisenstein& o) { return *this = *this * o; }

Eisenstein Eisenstein::inverse() const {
  BigRational nn = norm();
  if (sgn(nn) == 0) throw std::domain_error("Eisenstein inverse of zero");
  Eisenstein c = conj();
  return {c.a_ / nn, c.b_ / nn};
}

Eisenstein Eisenstein::operator/(const Eisenstein& o) const { return *this * o.inverse(); }

std::string Eisenstein::str() const { return to_string(a_) + (sgn(b_) < 0 ? "" : "+") + to_string(b_) + "q"; }

}  // namespace wheelperc
