#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <vector>

#include "nilgraph/permutation.hpp"

using namespace nilgraph;

namespace {

// All n! permutations of degree n, lexicographic by image vector.
std::vector<Permutation> all_perms(unsigned n) {
  std::vector<unsigned> im(n);
  std::iota(im.begin(), im.end(), 0u);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(im));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

// Independent oracle: apply q, then p, pointwise on a fresh table.
std::vector<unsigned> compose_table_oracle(const Permutation& p, const Permutation& q) {
  std::vector<unsigned> t(p.degree());
  for (unsigned i = 0; i < p.degree(); ++i) t[i] = p(q(i));
  return t;
}

// Independent oracle: repeated composition, no fast exponentiation.
Permutation power_oracle(const Permutation& p, std::uint64_t e) {
  Permutation r(p.degree());
  for (std::uint64_t i = 0; i < e; ++i) r = compose(p, r);
  return r;
}

Permutation pc(const std::string& s, unsigned n) { return parse_cycles(s, n); }

}  // namespace

TEST_CASE("compose basics and S3 exhaustive oracle") {
  CHECK(compose(Permutation(4), pc("(1 2)", 4)) == pc("(1 2)", 4));
  CHECK(compose(pc("(1 2)", 2), pc("(1 2)", 2)) == Permutation(2));

  for (const auto& p : all_perms(3))
    for (const auto& q : all_perms(3))
      CHECK(compose(p, q).images() == compose_table_oracle(p, q));

  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), std::invalid_argument);
}

TEST_CASE("cycle type") {
  auto t = CycleType::of(pc("(1 2)(3 4)", 4));
  CHECK(t.counts == std::map<unsigned, unsigned>{{2, 2}});

  t = CycleType::of(Permutation(5));
  CHECK(t.counts == std::map<unsigned, unsigned>{{1, 5}});

  t = CycleType::of(pc("(1 2 3)(4 5)", 6));
  CHECK(t.counts == std::map<unsigned, unsigned>{{1, 1}, {2, 1}, {3, 1}});
}

TEST_CASE("cycle_len") {
  CHECK(pc("(1 2 3)(4 5)", 5).cycle_len(3) == 2);  // 0-based point 3 = paper's point 4
  for (unsigned i = 0; i < 4; ++i) CHECK(Permutation(4).cycle_len(i) == 1);
  CHECK(pc("(1 2 3 4 5)", 5).cycle_len(2) == 5);
  CHECK_THROWS_AS(Permutation(3).cycle_len(3), std::invalid_argument);
}

TEST_CASE("order") {
  CHECK(pc("(1 2)(3 4 5)", 5).order() == 6);
  CHECK(Permutation(4).order() == 1);
  CHECK(pc("(1 2)(3 4)", 4).order() == 2);
}

TEST_CASE("support and parity") {
  auto s = pc("(1 2)(3 4)", 4).support();
  CHECK(s == std::vector<unsigned>{0, 1, 2, 3});
  CHECK(Permutation(6).support().empty());
  CHECK(pc("(2 5)", 6).support() == std::vector<unsigned>{1, 4});

  CHECK(pc("(1 2)(3 4)", 4).is_even());
  CHECK_FALSE(pc("(1 2)", 4).is_even());
  CHECK(pc("(1 2 3)", 4).is_even());
}

TEST_CASE("prime_part matches brute-force powers") {
  auto g = pc("(1 2)(3 4 5)", 5);
  CHECK(g.prime_part(2) == power_oracle(g, 3));   // (1 2)
  CHECK(g.prime_part(2) == pc("(1 2)", 5));
  CHECK(g.prime_part(3) == power_oracle(g, 4));   // (3 4 5)
  CHECK(g.prime_part(3) == pc("(3 4 5)", 5));
  CHECK(g.prime_part(5) == Permutation(5));       // 5 does not divide ord = 6
  CHECK_THROWS_AS(g.prime_part(6), std::invalid_argument);
}

TEST_CASE("primary decomposition properties over S5") {
  for (const auto& p : all_perms(5)) {
    Permutation prod(5);
    for (auto [q, e] : factorize(p.order())) {
      (void)e;
      auto part = p.prime_part(q);
      CHECK(part.order() == ipow(q, valuation(p.order(), q)));
      prod = compose(prod, part);
    }
    CHECK(prod == p);  // parts multiply back to the element
    // parts for distinct primes commute
    auto a = p.prime_part(2), b = p.prime_part(3);
    CHECK(compose(a, b) == compose(b, a));
  }
}

TEST_CASE("centralizer order formula vs exhaustive commuting count") {
  CHECK(CycleType::of(pc("(1 2)(3 4)", 4)).centralizer_order() == 8);
  CHECK(CycleType::of(Permutation(5)).centralizer_order() == 120);
  CHECK(CycleType::of(pc("(1 2 3)", 4)).centralizer_order() == 3);

  for (unsigned n = 2; n <= 6; ++n) {
    auto sn = all_perms(n);
    for (unsigned rep = 0; rep < sn.size(); rep += 37) {  // sampled representatives
      const auto& p = sn[rep];
      std::uint64_t commuting = 0;
      for (const auto& q : sn)
        if (compose(p, q) == compose(q, p)) ++commuting;
      CHECK(CycleType::of(p).centralizer_order() == commuting);
    }
  }
}

TEST_CASE("conjugation preserves cycle type") {
  auto s6 = all_perms(6);
  for (std::size_t i = 7; i < s6.size(); i += 101) {
    for (std::size_t j = 3; j < s6.size(); j += 97) {
      const auto& p = s6[i];
      const auto& q = s6[j];
      auto conj = compose(q.inverse(), compose(p, q));
      CHECK(CycleType::of(conj) == CycleType::of(p));
    }
  }
}

TEST_CASE("inverse and composition identities") {
  for (const auto& p : all_perms(4)) {
    CHECK(compose(p, p.inverse()) == Permutation(4));
    CHECK(compose(p.inverse(), p) == Permutation(4));
    CHECK(p.power(p.order()) == Permutation(4));
  }
}

TEST_CASE("cycle notation round trip") {
  CHECK(format_cycles(Permutation(4)) == "()");
  CHECK(format_cycles(pc("(1 2)(3 4)", 4)) == "(1 2)(3 4)");
  CHECK(parse_cycles("( 1 2 ) ( 3 4 )", 4) == pc("(1 2)(3 4)", 4));
  for (const auto& p : all_perms(5)) CHECK(parse_cycles(format_cycles(p), 5) == p);

  CHECK_THROWS_AS(parse_cycles("(1 2", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 5)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 4), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("1 2", 4), std::invalid_argument);
}

TEST_CASE("hashing distinguishes permutations") {
  std::unordered_set<Permutation> seen;
  for (const auto& p : all_perms(5)) seen.insert(p);
  CHECK(seen.size() == 120);
}
