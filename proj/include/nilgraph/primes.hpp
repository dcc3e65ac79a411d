#pragma once

// Small exact prime utilities: trial-division primality, sieves, factoring,
// p-adic valuations. All inputs in this project stay far below 2^63 (orders
// of permutations, primes of the order of a few hundred million).

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nilgraph {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t next_prime_above(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

inline std::vector<unsigned> primes_upto(unsigned n) {
  std::vector<unsigned> out;
  if (n < 2) return out;
  std::vector<char> composite(n + 1, 0);
  for (unsigned p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = std::uint64_t(p) * p; q <= n; q += p) composite[q] = 1;
  }
  return out;
}

// Exponent of p in n.
inline unsigned valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0 || p < 2) throw std::invalid_argument("valuation: bad arguments");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Exponent of p in n! (Legendre).
inline std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) {
  std::uint64_t v = 0;
  for (std::uint64_t q = p; q <= n; q *= p) {
    v += n / q;
    if (q > n / p) break;  // next q would overflow past n anyway
  }
  return v;
}

// Trial-division factorisation, (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / gcd_u64(a, b) * b;
}

// Inverse of a modulo m for coprime a, m (extended Euclid).
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = std::int64_t(m), nr = std::int64_t(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: arguments not coprime");
  return std::uint64_t(t < 0 ? t + std::int64_t(m) : t);
}

}  // namespace nilgraph
