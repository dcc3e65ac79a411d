#pragma once

// Exact counting around symmetric and alternating groups: nilpotent-partner
// counts for distinct-prime cycle classes and for the 2,2,p_1..p_k class,
// sums of distinct primes > 3, the h(n,p) ordered-pair count with its degree
// bound sweeps, and big-integer divisibility ledgers certifying that any
// group sharing the non-nilpotent graph of S_n or A_n has trivial
// hypercenter.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilgraph/primes.hpp"

namespace nilgraph {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial_big(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

// ---------------------------------------------------------------------------
// Cycle classes

// A partition of n into pairwise distinct parts, each prime or equal to 1.
// Cycle types of this shape have exactly (product of parts) nilpotent
// partners in S_n, namely the cyclic group the permutation generates.
struct PrimePartition {
  unsigned n = 0;
  std::vector<unsigned> parts;  // ascending

  static PrimePartition of(unsigned n, std::vector<unsigned> parts) {
    std::sort(parts.begin(), parts.end());
    unsigned sum = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      unsigned p = parts[i];
      if (p != 1 && !is_prime(p)) throw std::invalid_argument("PrimePartition: parts must be 1 or prime");
      if (i && parts[i - 1] == p) throw std::invalid_argument("PrimePartition: parts must be distinct");
      sum += p;
    }
    if (sum != n) throw std::invalid_argument("PrimePartition: parts must sum to n");
    return PrimePartition{n, std::move(parts)};
  }

  std::uint64_t product() const {
    std::uint64_t r = 1;
    for (unsigned p : parts) r *= p;
    return r;
  }

  bool all_odd() const {
    for (unsigned p : parts)
      if (p % 2 == 0) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "+" : "") << parts[i];
    return os.str();
  }
};

inline std::uint64_t count_nilpotent_partners_distinct(const PrimePartition& t) {
  return t.product();
}

// All partitions of n into distinct parts that are prime or 1.
inline std::vector<PrimePartition> distinct_prime_partitions(unsigned n, bool odd_only = false) {
  std::vector<unsigned> pool = primes_upto(n);
  if (odd_only) std::erase(pool, 2u);
  pool.insert(pool.begin(), 1u);  // at most one part equal to 1
  std::vector<PrimePartition> out;
  std::vector<unsigned> chosen;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (left == 0) {
      out.push_back(PrimePartition::of(n, chosen));
      return;
    }
    for (std::size_t j = i; j < pool.size() && pool[j] <= left; ++j) {
      chosen.push_back(pool[j]);
      self(self, j + 1, left - pool[j]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, n);
  return out;
}

// Nilpotent-partner counts for the cycle class 2, 2, p_1, ..., p_k with the
// p_i distinct odd primes: 16 * prod(p_i) partners in S_n, of which
// 4 * prod(p_i) lie in A_n (n = 4 + sum p_i).
inline std::pair<std::uint64_t, std::uint64_t> count_nilpotent_partners_two_twos(
    const std::vector<unsigned>& odd_primes) {
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < odd_primes.size(); ++i) {
    unsigned p = odd_primes[i];
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("two_twos: parts must be odd primes");
    for (std::size_t j = i + 1; j < odd_primes.size(); ++j)
      if (odd_primes[j] == p) throw std::invalid_argument("two_twos: parts must be distinct");
    prod *= p;
  }
  return {16 * prod, 4 * prod};
}

// Subsets of distinct odd primes summing to m (used for the 2,2,... classes).
inline std::vector<std::vector<unsigned>> odd_prime_subsets_summing(unsigned m) {
  std::vector<unsigned> pool = primes_upto(m);
  std::erase(pool, 2u);
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> chosen;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (left == 0) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t j = i; j < pool.size() && pool[j] <= left; ++j) {
      chosen.push_back(pool[j]);
      self(self, j + 1, left - pool[j]);
      chosen.pop_back();
    }
  };
  rec(rec, 0, m);
  return out;
}

// ---------------------------------------------------------------------------
// Sums of distinct primes greater than 3

// Subset-sum oracle over primes in [5, m].
inline std::optional<std::vector<unsigned>> subset_of_primes_gt3_summing(unsigned m) {
  std::vector<unsigned> pool;
  for (unsigned p : primes_upto(m))
    if (p >= 5) pool.push_back(p);
  std::vector<unsigned> chosen;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> bool {
    if (left == 0) return true;
    for (std::size_t j = i; j < pool.size() && pool[j] <= left; ++j) {
      chosen.push_back(pool[j]);
      if (self(self, j + 1, left - pool[j])) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (rec(rec, 0, m)) return chosen;
  return std::nullopt;
}

// Every m >= 28 is a sum of distinct primes > 3. Base cases 28..89 come from
// a subset-sum over primes in [5, 31]; beyond that, peel off the largest
// prime in [(m-27)/2, m-27) and recurse. Primes picked this way strictly
// decrease, which keeps the parts distinct.
inline std::vector<unsigned> prime_sum_decompose(unsigned m) {
  if (m < 28) throw std::invalid_argument("prime_sum_decompose: m must be at least 28");
  if (m <= 89) {
    std::vector<unsigned> pool;
    for (unsigned p : primes_upto(31))
      if (p >= 5) pool.push_back(p);
    std::vector<unsigned> chosen;
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> bool {
      if (left == 0) return true;
      for (std::size_t j = i; j < pool.size() && pool[j] <= left; ++j) {
        chosen.push_back(pool[j]);
        if (self(self, j + 1, left - pool[j])) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (!rec(rec, 0, m)) throw std::logic_error("prime_sum_decompose: base table gap");
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }
  // Bertrand step: some prime lives in [(m-27)/2, m-27).
  unsigned lo = (m - 27 + 1) / 2, hi = m - 27;  // [lo, hi)
  unsigned pick = 0;
  for (unsigned p = hi - 1; p >= lo; --p) {
    if (is_prime(p)) {
      pick = p;
      break;
    }
  }
  if (pick == 0) throw std::logic_error("prime_sum_decompose: Bertrand interval without a prime");
  std::vector<unsigned> rest = prime_sum_decompose(m - pick);
  rest.push_back(pick);
  std::sort(rest.begin(), rest.end());
  return rest;
}

// ---------------------------------------------------------------------------
// h(n, p): ordered pairs (a, b) with a, b >= 1, a + b <= n and a/b a power
// of p. Closed form: floor(n/2) + 2 * sum_k floor(n / (p^k + 1)).

inline std::uint64_t h_pair_count(unsigned n, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("h_pair_count: p must be prime");
  std::uint64_t total = n / 2;
  for (std::uint64_t pk = p; pk + 1 <= n; pk *= p) total += 2 * (n / (pk + 1));
  return total;
}

struct DegreeBoundsRow {
  unsigned n = 0;
  bool odd_prime_case = false;     // 12 h(n,p) <= n(n-1) for all odd primes p <= n
  bool even_case = false;          // 48 h(n,2) <= 5 n(n-1)
  bool transposition_case = false; // 2 (floor(log2 n) + 1) < n
};

inline DegreeBoundsRow check_degree_bounds_at(unsigned n) {
  DegreeBoundsRow row;
  row.n = n;
  row.odd_prime_case = true;
  std::uint64_t nn = std::uint64_t(n) * (n - 1);
  for (unsigned p : primes_upto(n))
    if (p > 2 && 12 * h_pair_count(n, p) > nn) row.odd_prime_case = false;
  row.even_case = 48 * h_pair_count(n, 2) <= 5 * nn;
  unsigned log2n = 0;
  while ((1u << (log2n + 1)) <= n) ++log2n;
  row.transposition_case = 2 * (log2n + 1) < n;
  return row;
}

inline std::vector<DegreeBoundsRow> check_degree_bounds(unsigned lo, unsigned hi) {
  std::vector<DegreeBoundsRow> rows;
  for (unsigned n = lo; n <= hi; ++n) rows.push_back(check_degree_bounds_at(n));
  return rows;
}

// ---------------------------------------------------------------------------
// Divisibility ledgers
//
// Let H be a finite group with the same non-nilpotent graph as S_n (kind 'S')
// or A_n (kind 'A'), and z = |Z*(H)|. Then z divides |G| - 1 (vertex count)
// and |G| - c for every counted nilpotent-partner class c, hence every
// pairwise difference. z also divides |G| - 1, so z is coprime to n!; the
// conclusion strips every prime factor <= n from the gcd.

struct LedgerFact {
  std::string source;
  BigInt value;
};

struct DivisibilityLedger {
  unsigned n = 0;
  char kind = 'S';
  BigInt group_order;
  std::vector<LedgerFact> facts;
  std::vector<LedgerFact> differences;
  BigInt gcd_all;
  BigInt conclusion;       // gcd with all prime factors <= n removed
  bool certified = false;  // conclusion == 1, i.e. z = 1

  std::string to_text() const {
    std::ostringstream os;
    os << "hypercenter divisibility ledger for " << kind << "_" << n << " (order " << group_order
       << ")\n";
    for (const auto& f : facts) os << "  z | " << f.value << "    [" << f.source << "]\n";
    for (const auto& d : differences) os << "  z | " << d.value << "    [" << d.source << "]\n";
    os << "  gcd of all facts: " << gcd_all << "\n";
    os << "  after removing prime factors <= " << n << ": " << conclusion << "\n";
    os << (certified ? "  certified: z = 1\n" : "  NOT certified\n");
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    j["kind"] = std::string(1, kind);
    j["order"] = group_order.str();
    auto fs = nlohmann::ordered_json::array();
    for (const auto& f : facts) fs.push_back({{"source", f.source}, {"value", f.value.str()}});
    j["facts"] = std::move(fs);
    auto ds = nlohmann::ordered_json::array();
    for (const auto& d : differences) ds.push_back({{"source", d.source}, {"value", d.value.str()}});
    j["differences"] = std::move(ds);
    j["gcd"] = gcd_all.str();
    j["conclusion"] = conclusion.str();
    j["certified"] = certified;
    return j;
  }
};

inline DivisibilityLedger certify_trivial_hypercenter(unsigned n, char kind) {
  if (kind != 'S' && kind != 'A') throw std::invalid_argument("ledger kind must be 'S' or 'A'");
  if ((kind == 'S' && n < 3) || (kind == 'A' && n < 4))
    throw std::invalid_argument("ledger: n below the certified range");

  DivisibilityLedger led;
  led.n = n;
  led.kind = kind;
  led.group_order = factorial_big(n);
  if (kind == 'A') led.group_order /= 2;

  led.facts.push_back({"vertex count: z | |G| - 1", led.group_order - 1});

  // Distinct-prime cycle classes. For A_n only all-odd partitions are used:
  // those permutations are even and so are all their nilpotent partners.
  for (const auto& part : distinct_prime_partitions(n, kind == 'A')) {
    std::uint64_t c = count_nilpotent_partners_distinct(part);
    led.facts.push_back(
        {"class " + part.to_string() + ": z | |G| - " + std::to_string(c), led.group_order - c});
  }

  // 2,2,p_1..p_k classes (even permutations as well).
  if (n >= 4) {
    for (const auto& q : odd_prime_subsets_summing(n - 4)) {
      auto [in_s, in_a] = count_nilpotent_partners_two_twos(q);
      std::uint64_t c = kind == 'S' ? in_s : in_a;
      std::string name = "2+2";
      for (unsigned p : q) name += "+" + std::to_string(p);
      led.facts.push_back(
          {"class " + name + ": z | |G| - " + std::to_string(c), led.group_order - c});
    }
  }

  for (std::size_t i = 0; i < led.facts.size(); ++i)
    for (std::size_t j = i + 1; j < led.facts.size(); ++j) {
      BigInt d = abs(led.facts[i].value - led.facts[j].value);
      if (d != 0)
        led.differences.push_back(
            {"difference of facts " + std::to_string(i + 1) + " and " + std::to_string(j + 1), d});
    }

  led.gcd_all = 0;
  for (const auto& f : led.facts) led.gcd_all = gcd(led.gcd_all, f.value);
  led.conclusion = led.gcd_all;
  for (unsigned p : primes_upto(n))
    while (led.conclusion % p == 0) led.conclusion /= p;
  led.certified = led.conclusion == 1;
  return led;
}

// Cross-check for n of the form p or p+1 (p an odd prime): the ledger's
// conclusion is subsumed by z | p - 1 there.
inline std::optional<BigInt> prime_form_shortcut(unsigned n) {
  if (n >= 3 && is_prime(n)) return BigInt(n - 1);
  if (n >= 4 && is_prime(n - 1)) return BigInt(n - 2);
  return std::nullopt;
}

}  // namespace nilgraph
