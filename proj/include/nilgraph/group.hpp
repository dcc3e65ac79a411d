#pragma once

// Enumerable finite groups behind a uniform id-based interface, plus the
// nilpotency machinery: generated subgroups, center, upper central series,
// hypercenter, commutator subgroup, Sylow-normality nilpotency test and the
// two-element nilpotency test (fast pairwise criterion + subgroup oracle).
//
// Groups are immutable after construction; every query below is read-only
// and safe to call from concurrent workers.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nilgraph/parallel.hpp"
#include "nilgraph/permutation.hpp"
#include "nilgraph/primes.hpp"

namespace nilgraph {

using Elem = std::uint32_t;

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GroupRep {
 public:
  virtual ~GroupRep() = default;
  virtual std::size_t size() const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem one() const = 0;
  virtual std::string element_name(Elem a) const = 0;
};

// Value-semantic handle over an immutable group. Small groups additionally
// carry a dense multiplication table; orders and inverses are precomputed.
class FiniteGroup {
 public:
  static constexpr std::size_t kDenseTableLimit = 6000;

  FiniteGroup() = default;

  FiniteGroup(std::shared_ptr<const GroupRep> rep, std::string label) {
    auto impl = std::make_shared<Impl>();
    impl->rep = std::move(rep);
    impl->label = std::move(label);
    impl->n = impl->rep->size();
    impl->identity = impl->rep->one();
    if (impl->n <= kDenseTableLimit) {
      impl->table.resize(impl->n * impl->n);
      for (std::size_t a = 0; a < impl->n; ++a)
        for (std::size_t b = 0; b < impl->n; ++b)
          impl->table[a * impl->n + b] = std::uint16_t(impl->rep->mul(Elem(a), Elem(b)));
    }
    impl->order.resize(impl->n);
    impl->inverse.resize(impl->n);
    for (Elem x = 0; x < impl->n; ++x) {
      std::uint64_t k = 1;
      Elem prev = x, cur = impl->mul(x, x);
      while (prev != impl->identity) {
        ++k;
        prev = std::exchange(cur, impl->mul(cur, x));
      }
      impl->order[x] = k;
      impl->inverse[x] = k == 1 ? x : impl->powr(x, k - 1);
    }
    impl_ = std::move(impl);
  }

  bool valid() const { return impl_ != nullptr; }
  std::size_t size() const { return impl_->n; }
  const std::string& label() const { return impl_->label; }
  Elem identity() const { return impl_->identity; }
  Elem mul(Elem a, Elem b) const { return impl_->mul(a, b); }
  Elem inverse(Elem a) const { return impl_->inverse[a]; }
  std::uint64_t element_order(Elem a) const { return impl_->order[a]; }
  std::string element_name(Elem a) const { return impl_->rep->element_name(a); }
  const GroupRep& rep() const { return *impl_->rep; }

  Elem power(Elem a, std::uint64_t e) const { return impl_->powr(a, e % impl_->order[a]); }

  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  // q-primary component of x, with the CRT exponent so that the parts over
  // all primes dividing ord(x) multiply back to x.
  Elem prime_part(Elem x, std::uint64_t q) const {
    if (!is_prime(q)) throw std::invalid_argument("prime_part: q must be prime");
    std::uint64_t m = element_order(x);
    unsigned a = valuation(m, q);
    if (a == 0) return identity();
    std::uint64_t qa = ipow(q, a);
    std::uint64_t mq = m / qa;
    std::uint64_t e = mq % qa == 0 ? 0 : mq * inverse_mod(mq % qa, qa);
    return impl_->powr(x, e % m);
  }

  bool is_p_element(Elem x, std::uint64_t p) const {
    std::uint64_t m = element_order(x);
    while (m % p == 0) m /= p;
    return m == 1;
  }

  bool same_impl(const FiniteGroup& o) const { return impl_ == o.impl_; }

 private:
  struct Impl {
    std::shared_ptr<const GroupRep> rep;
    std::string label;
    std::size_t n = 0;
    Elem identity = 0;
    std::vector<std::uint16_t> table;
    std::vector<Elem> inverse;
    std::vector<std::uint64_t> order;

    Elem mul(Elem a, Elem b) const {
      return table.empty() ? rep->mul(a, b) : Elem(table[std::size_t(a) * n + b]);
    }
    Elem powr(Elem a, std::uint64_t e) const {
      Elem acc = identity, base = a;
      while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
      }
      return acc;
    }
  };
  std::shared_ptr<const Impl> impl_;
};

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  FiniteGroup parent;
  std::vector<Elem> members;  // ascending ids
  std::vector<char> mask;     // size |parent|

  std::size_t order() const { return members.size(); }
  bool contains(Elem x) const { return mask[x] != 0; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

inline Subgroup make_subgroup(FiniteGroup g, std::vector<Elem> members) {
  Subgroup s;
  s.mask.assign(g.size(), 0);
  for (Elem e : members) s.mask[e] = 1;
  s.parent = std::move(g);
  s.members = std::move(members);
  return s;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return make_subgroup(g, {g.identity()}); }

inline Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.size());
  for (Elem e = 0; e < g.size(); ++e) all[e] = e;
  return make_subgroup(g, std::move(all));
}

// Closure of gens under multiplication (breadth-first from the identity;
// inverses come for free in a finite group).
inline Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<Elem>& gens) {
  std::vector<char> in(g.size(), 0);
  std::vector<Elem> elems{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (Elem x : gens) {
      Elem f = g.mul(elems[head], x);
      if (!in[f]) {
        in[f] = 1;
        elems.push_back(f);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  return make_subgroup(g, std::move(elems));
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g.size(); ++x) {
    bool central = true;
    for (Elem y = 0; y < g.size() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return make_subgroup(g, std::move(z));
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  for (Elem x = 0; x < g.size(); ++x) {
    Elem xi = g.inverse(x);
    for (Elem h : s.members)
      if (!s.contains(g.mul(g.mul(x, h), xi))) return false;
  }
  return true;
}

inline Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Elem> comms;
  for (Elem x = 0; x < g.size(); ++x) {
    Elem xi = g.inverse(x);
    for (Elem y = 0; y < g.size(); ++y) {
      Elem c = g.mul(g.mul(g.mul(xi, g.inverse(y)), x), y);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  }
  return generated_subgroup(g, comms);
}

// ---------------------------------------------------------------------------
// Quotients: coset tables with canonical minimum-id representatives.

class QuotientRep : public GroupRep {
 public:
  QuotientRep(FiniteGroup parent, const Subgroup& kernel) : parent_(std::move(parent)) {
    coset_of_.assign(parent_.size(), kUnassigned);
    for (Elem e = 0; e < parent_.size(); ++e) {
      if (coset_of_[e] != kUnassigned) continue;
      Elem idx = Elem(reps_.size());
      reps_.push_back(e);  // scanning ascending makes e the minimum of its coset
      for (Elem k : kernel.members) coset_of_[parent_.mul(e, k)] = idx;
    }
  }

  std::size_t size() const override { return reps_.size(); }
  Elem mul(Elem a, Elem b) const override { return coset_of_[parent_.mul(reps_[a], reps_[b])]; }
  Elem one() const override { return coset_of_[parent_.identity()]; }
  std::string element_name(Elem a) const override {
    return "[" + parent_.element_name(reps_[a]) + "]";
  }

  Elem coset_of(Elem parent_elem) const { return coset_of_[parent_elem]; }
  Elem representative(Elem coset) const { return reps_[coset]; }

 private:
  static constexpr Elem kUnassigned = ~Elem(0);
  FiniteGroup parent_;
  std::vector<Elem> reps_;
  std::vector<Elem> coset_of_;
};

inline FiniteGroup quotient(const FiniteGroup& g, const Subgroup& kernel, const std::string& label) {
  if (!is_normal(g, kernel)) throw std::invalid_argument("quotient: kernel is not normal");
  return FiniteGroup(std::make_shared<QuotientRep>(g, kernel), label);
}

// ---------------------------------------------------------------------------
// Upper central series and hypercenter

// Z_0 = 1, Z_{i+1} = preimage of Z(G/Z_i); returned list starts at Z_0 and
// ends at the first stable term.
inline std::vector<Subgroup> upper_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{trivial_subgroup(g)};
  for (;;) {
    const Subgroup& z = series.back();
    if (z.order() == g.size()) break;
    FiniteGroup q = quotient(g, z, g.label() + "/Z_i");
    const auto& qr = static_cast<const QuotientRep&>(q.rep());
    Subgroup zq = center(q);
    std::vector<Elem> next;
    for (Elem e = 0; e < g.size(); ++e)
      if (zq.contains(qr.coset_of(e))) next.push_back(e);
    if (next.size() == z.order()) break;
    series.push_back(make_subgroup(g, std::move(next)));
  }
  return series;
}

inline Subgroup hypercenter(const FiniteGroup& g) { return upper_central_series(g).back(); }

// ---------------------------------------------------------------------------
// Nilpotency

// A finite group is nilpotent iff every Sylow subgroup is normal, which at
// this scale is the same as: for each prime p dividing the order, the set
// of p-elements is closed under multiplication.
inline bool is_nilpotent(const Subgroup& h) {
  const FiniteGroup& g = h.parent;
  for (auto [p, e] : factorize(h.order())) {
    (void)e;
    std::uint64_t cap = ipow(p, valuation(h.order(), p));  // Sylow p order
    std::vector<Elem> pelems;
    for (Elem x : h.members)
      if (cap % g.element_order(x) == 0) pelems.push_back(x);
    for (Elem a : pelems)
      for (Elem b : pelems) {
        Elem ab = g.mul(a, b);
        if (cap % g.element_order(ab) != 0 || !h.contains(ab)) return false;
      }
  }
  return true;
}

inline bool is_nilpotent(const FiniteGroup& g) { return is_nilpotent(whole_group(g)); }

// Reusable scratch space for subgroup closures keyed by element ids.
struct ClosureWorkspace {
  std::vector<char> in;
  std::vector<Elem> elems;
};

// Does <a, b> consist of p-elements only (equivalently: is it a p-group)?
// Aborts as soon as a non-p-element appears or the closure outgrows the
// largest power of p dividing |G|.
inline bool generates_p_subgroup(const FiniteGroup& g, Elem a, Elem b, std::uint64_t p,
                                 ClosureWorkspace* ws = nullptr) {
  std::uint64_t cap = ipow(p, valuation(std::uint64_t(g.size()), p));
  ClosureWorkspace local;
  ClosureWorkspace& w = ws ? *ws : local;
  if (w.in.size() != g.size()) w.in.assign(g.size(), 0);
  w.elems.clear();
  w.elems.push_back(g.identity());
  w.in[g.identity()] = 1;
  const Elem gens[2] = {a, b};
  bool ok = true;
  for (std::size_t head = 0; ok && head < w.elems.size(); ++head) {
    for (Elem x : gens) {
      Elem f = g.mul(w.elems[head], x);
      if (w.in[f]) continue;
      if (cap % g.element_order(f) != 0 || w.elems.size() >= cap) {
        ok = false;
        break;
      }
      w.in[f] = 1;
      w.elems.push_back(f);
    }
  }
  for (Elem e : w.elems) w.in[e] = 0;
  return ok;
}

// Fast two-element nilpotency test: primary parts of x and y must commute
// across distinct primes, and generate a p-group for each shared prime.
inline bool pair_nilpotent(const FiniteGroup& g, Elem x, Elem y, ClosureWorkspace* ws = nullptr) {
  std::vector<std::pair<std::uint64_t, Elem>> xs, ys;
  for (auto [p, e] : factorize(g.element_order(x))) {
    (void)e;
    xs.emplace_back(p, g.prime_part(x, p));
  }
  for (auto [q, e] : factorize(g.element_order(y))) {
    (void)e;
    ys.emplace_back(q, g.prime_part(y, q));
  }
  for (auto& [p, xp] : xs)
    for (auto& [q, yq] : ys) {
      if (p != q) {
        if (!g.commute(xp, yq)) return false;
      } else if (!generates_p_subgroup(g, xp, yq, p, ws)) {
        return false;
      }
    }
  return true;
}

// Oracle path: materialize <x, y> and run the Sylow-normality test.
inline bool pair_nilpotent_subgroup_oracle(const FiniteGroup& g, Elem x, Elem y) {
  return is_nilpotent(generated_subgroup(g, {x, y}));
}

// ---------------------------------------------------------------------------
// Cached pairwise census: precomputes primary parts per element and, per
// prime, the "generates a p-group" matrix over p-elements, so that bulk
// pair tests are table lookups. Used by the graph builder.

class PairNilpotencyCache {
 public:
  explicit PairNilpotencyCache(FiniteGroup g, unsigned workers = 0) : g_(std::move(g)) {
    for (auto [p, e] : factorize(std::uint64_t(g_.size()))) {
      (void)e;
      primes_.push_back(p);
    }
    std::size_t np = primes_.size();
    p_elements_.resize(np);
    pelem_index_.assign(np, std::vector<std::uint32_t>(g_.size(), 0));
    for (std::size_t pi = 0; pi < np; ++pi) {
      std::uint64_t p = primes_[pi];
      std::uint64_t cap = ipow(p, valuation(std::uint64_t(g_.size()), p));
      for (Elem x = 0; x < g_.size(); ++x) {
        if (cap % g_.element_order(x) == 0) {
          p_elements_[pi].push_back(x);
          pelem_index_[pi][x] = std::uint32_t(p_elements_[pi].size());  // 1-based
        }
      }
    }

    parts_.resize(g_.size());
    for (Elem x = 0; x < g_.size(); ++x) {
      std::uint64_t m = g_.element_order(x);
      for (std::size_t pi = 0; pi < np; ++pi) {
        if (m % primes_[pi]) continue;
        Elem part = g_.prime_part(x, primes_[pi]);
        parts_[x].push_back(Part{std::uint32_t(pi), part, pelem_index_[pi][part] - 1});
      }
    }

    pgroup_.resize(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
      std::size_t count = p_elements_[pi].size();
      if (count > kMatrixLimit) continue;  // fall back to per-query closures
      pgroup_[pi].assign(count * count, 0);
      auto& mat = pgroup_[pi];
      const auto& pe = p_elements_[pi];
      std::uint64_t p = primes_[pi];
      parallel_for(count, workers, [&](std::size_t i) {
        thread_local ClosureWorkspace ws;
        for (std::size_t j = i; j < count; ++j) {
          std::uint8_t v = generates_p_subgroup(g_, pe[i], pe[j], p, &ws) ? 1 : 0;
          mat[i * count + j] = v;
          mat[j * count + i] = v;
        }
      });
    }
  }

  const FiniteGroup& group() const { return g_; }

  bool pair_nilpotent(Elem x, Elem y) const {
    for (const Part& a : parts_[x])
      for (const Part& b : parts_[y]) {
        if (a.prime_index != b.prime_index) {
          if (!g_.commute(a.part, b.part)) return false;
        } else if (!pgroup_[a.prime_index].empty()) {
          std::size_t count = p_elements_[a.prime_index].size();
          if (!pgroup_[a.prime_index][std::size_t(a.pelem_index) * count + b.pelem_index]) return false;
        } else {
          thread_local ClosureWorkspace ws;
          if (!generates_p_subgroup(g_, a.part, b.part, primes_[a.prime_index], &ws)) return false;
        }
      }
    return true;
  }

 private:
  static constexpr std::size_t kMatrixLimit = 4096;

  struct Part {
    std::uint32_t prime_index;
    Elem part;
    std::uint32_t pelem_index;
  };

  FiniteGroup g_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<Part>> parts_;
  std::vector<std::vector<Elem>> p_elements_;
  std::vector<std::vector<std::uint32_t>> pelem_index_;
  std::vector<std::vector<std::uint8_t>> pgroup_;
};

// ---------------------------------------------------------------------------
// Permutation-level pair nilpotency, for symmetric groups too large to
// enumerate (Monte Carlo sampling in S_19 and the like).

inline bool perm_pair_generates_p_group(const Permutation& a, const Permutation& b, std::uint64_t p) {
  unsigned n = a.degree();
  std::uint64_t vp = factorial_valuation(n, p);
  if (vp >= 22) throw std::invalid_argument("perm_pair_generates_p_group: Sylow cap too large");
  std::uint64_t cap = ipow(p, unsigned(vp));
  std::unordered_set<Permutation> seen;
  std::vector<Permutation> elems{Permutation(n)};
  seen.insert(elems[0]);
  const Permutation* gens[2] = {&a, &b};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const Permutation* x : gens) {
      Permutation f = compose(elems[head], *x);
      if (seen.count(f)) continue;
      if (!f.is_p_element(p) || elems.size() >= cap) return false;
      seen.insert(f);
      elems.push_back(std::move(f));
    }
  }
  return true;
}

inline bool pair_nilpotent(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree()) throw std::invalid_argument("pair_nilpotent: degree mismatch");
  std::vector<std::pair<std::uint64_t, Permutation>> xs, ys;
  for (auto [p, e] : factorize(x.order())) {
    (void)e;
    xs.emplace_back(p, x.prime_part(p));
  }
  for (auto [q, e] : factorize(y.order())) {
    (void)e;
    ys.emplace_back(q, y.prime_part(q));
  }
  for (auto& [p, xp] : xs)
    for (auto& [q, yq] : ys) {
      if (p != q) {
        if (compose(xp, yq) != compose(yq, xp)) return false;
      } else if (!perm_pair_generates_p_group(xp, yq, p)) {
        return false;
      }
    }
  return true;
}

}  // namespace nilgraph
