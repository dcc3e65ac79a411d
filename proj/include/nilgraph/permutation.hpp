#pragma once

// Permutations of {1..n} with cycle-structure accessors: cycle type, cycle
// lengths through a point, order, primary (p-part) decomposition, support.
// Points are 0-based internally; the 1-based convention lives entirely in
// the parse/format layer at the bottom of this header.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilgraph/primes.hpp"

namespace nilgraph {

class Permutation {
 public:
  Permutation() = default;

  // Identity on {0..n-1}.
  explicit Permutation(unsigned n) : images_(n) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  static Permutation from_images(std::vector<unsigned> images) {
    std::vector<char> seen(images.size(), 0);
    for (unsigned v : images) {
      if (v >= images.size() || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
      seen[v] = 1;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  unsigned degree() const { return unsigned(images_.size()); }
  unsigned operator()(unsigned i) const { return images_[i]; }
  const std::vector<unsigned>& images() const { return images_; }

  bool operator==(const Permutation&) const = default;
  bool operator<(const Permutation& o) const { return images_ < o.images_; }

  bool is_identity() const {
    for (unsigned i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r(degree());
    for (unsigned i = 0; i < degree(); ++i) r.images_[images_[i]] = i;
    return r;
  }

  // Smallest k >= 1 with p^k(i) = i.
  unsigned cycle_len(unsigned i) const {
    if (i >= degree()) throw std::invalid_argument("cycle_len: point out of range");
    unsigned k = 1;
    for (unsigned j = images_.at(i); j != i; j = images_.at(j)) ++k;
    return k;
  }

  // Disjoint cycles including fixed points, each cycle led by its minimum.
  std::vector<std::vector<unsigned>> cycles() const {
    std::vector<std::vector<unsigned>> out;
    std::vector<char> seen(degree(), 0);
    for (unsigned i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::vector<unsigned> cyc;
      for (unsigned j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::vector<unsigned> support() const {
    std::vector<unsigned> s;
    for (unsigned i = 0; i < degree(); ++i)
      if (images_[i] != i) s.push_back(i);
    return s;
  }

  std::uint64_t order() const {
    std::uint64_t m = 1;
    std::vector<char> seen(degree(), 0);
    for (unsigned i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      unsigned k = 0;
      for (unsigned j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++k;
      }
      m = lcm_u64(m, k);
    }
    return m;
  }

  bool is_even() const {
    unsigned transpositions = 0;
    std::vector<char> seen(degree(), 0);
    for (unsigned i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      unsigned k = 0;
      for (unsigned j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++k;
      }
      transpositions += k - 1;
    }
    return transpositions % 2 == 0;
  }

  Permutation power(std::uint64_t e) const {
    Permutation base = *this, acc(degree());
    while (e) {
      if (e & 1) acc = acc.then(base);
      base = base.then(base);
      e >>= 1;
    }
    return acc;
  }

  // this followed by other: (this.then(o))(i) = o(this(i)).
  Permutation then(const Permutation& o) const {
    Permutation r(degree());
    for (unsigned i = 0; i < degree(); ++i) r.images_[i] = o.images_[images_[i]];
    return r;
  }

  bool is_p_element(std::uint64_t p) const {
    std::uint64_t m = order();
    while (m % p == 0) m /= p;
    return m == 1;
  }

  // The q-primary component: the power of this element of q-power order whose
  // product over all primes dividing the order recovers the element itself.
  // The exponent is the CRT solution e = 1 mod q^a, e = 0 mod (order/q^a).
  Permutation prime_part(std::uint64_t q) const {
    if (!is_prime(q)) throw std::invalid_argument("prime_part: q must be prime");
    std::uint64_t m = order();
    unsigned a = valuation(m, q);
    if (a == 0) return Permutation(degree());
    std::uint64_t qa = ipow(q, a);
    std::uint64_t mq = m / qa;  // order with all q-factors removed
    std::uint64_t e = mq % qa == 0 ? 0 : mq * inverse_mod(mq % qa, qa);
    return power(e);
  }

 private:
  std::vector<unsigned> images_;
};

// result(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  return q.then(p);
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

// Multiset of cycle lengths: counts[k] = number of k-cycles (zero entries omitted).
struct CycleType {
  unsigned degree = 0;
  std::map<unsigned, unsigned> counts;

  bool operator==(const CycleType&) const = default;

  static CycleType of(const Permutation& p) {
    CycleType t;
    t.degree = p.degree();
    for (const auto& c : p.cycles()) ++t.counts[unsigned(c.size())];
    return t;
  }

  // prod_k k^{a_k} a_k!  -- the size of the centralizer in S_n.
  // Overflows past degree 20; callers here stay at desk scale.
  std::uint64_t centralizer_order() const {
    if (degree > 20) throw std::invalid_argument("centralizer_order: degree too large for 64-bit result");
    std::uint64_t r = 1;
    for (auto [k, a] : counts) {
      for (unsigned i = 0; i < a; ++i) r *= k;
      for (unsigned i = 2; i <= a; ++i) r *= i;
    }
    return r;
  }
};

// ---- 1-based textual cycle notation: "(1 2)(3 4)", identity "()" ----

inline std::string format_cycles(const Permutation& p) {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : p.cycles()) {
    if (c.size() < 2) continue;
    any = true;
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] + 1;
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

inline Permutation parse_cycles(const std::string& text, unsigned degree) {
  std::vector<unsigned> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<char> used(degree, 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("parse_cycles: expected '('");
    ++i;
    std::vector<unsigned> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw std::invalid_argument("parse_cycles: expected point");
      unsigned v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + unsigned(text[i++] - '0');
      if (v < 1 || v > degree) throw std::invalid_argument("parse_cycles: point out of range");
      if (used[v - 1]) throw std::invalid_argument("parse_cycles: repeated point");
      used[v - 1] = 1;
      cyc.push_back(v - 1);
      skip_ws();
    }
    if (i >= text.size()) throw std::invalid_argument("parse_cycles: unterminated cycle");
    ++i;  // ')'
    for (std::size_t j = 0; j + 1 < cyc.size(); ++j) images[cyc[j]] = cyc[j + 1];
    if (cyc.size() >= 2) images[cyc.back()] = cyc.front();
    skip_ws();
  }
  return Permutation::from_images(std::move(images));
}

}  // namespace nilgraph

template <>
struct std::hash<nilgraph::Permutation> {
  std::size_t operator()(const nilgraph::Permutation& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};
