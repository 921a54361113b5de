#pragma once

#include <cstdint>
#include <vector>

#include "wheelperc/rational.hpp"

namespace wheelperc::mod {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// i-th largest prime below 2^62
u64 prime(int i);

inline u64 add(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 pow(u64 a, u64 e, u64 p);
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

u64 reduce(const BigInt& x, u64 p);
inline u64 reduce(long x, u64 p) {
  long r = x % static_cast<long>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<long>(p) : r);
}

// Incremental CRT; value kept in [0, modulus)
struct Crt {
  BigInt value = 0;
  BigInt modulus = 1;
  void add(u64 residue, u64 p);
  BigInt symmetric() const;  // representative in (-m/2, m/2]
};

}  // namespace wheelperc::mod
