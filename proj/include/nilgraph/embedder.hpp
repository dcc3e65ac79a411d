#pragma once

// Constructive embedding of an arbitrary simple graph as an induced subgraph
// of a non-nilpotent graph. The construction climbs a tower of extensions
//
//     G_t = (Z_{p_t})^{d_t} x| G_{t-1},
//
// one level per graph vertex, where G_{t-1} permutes the d_t coordinates
// through the regular action of the quotient by the kernel subgroup H_t.
// H_t is the preimage of a product of Sylow factors of the abelianization,
// so the quotient is the product of Z_{p_r} over the already-placed
// neighbours r of vertex t; concretely the coordinates are indexed by
// mixed-radix tuples over those primes and an element acts by translating
// the tuple by its per-level coordinate sums. That functional view is what
// lets elements multiply without ever enumerating a level.
//
// The witness x_t is the level-t vector (1, 2, ..., d): pairwise distinct
// coordinates with nonzero sum, so x_t has order p_t, commutes with x_r
// exactly when r and t are non-adjacent, and stays outside the commutator
// subgroup (the sum-zero functional kills G_t').

#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nilgraph/counting.hpp"
#include "nilgraph/graph.hpp"
#include "nilgraph/group.hpp"
#include "nilgraph/parallel.hpp"
#include "nilgraph/permutation.hpp"
#include "nilgraph/primes.hpp"

namespace nilgraph {

// One coordinate vector over Z_p. Witness vectors keep their closed form
// (the "iota" kind) so that even the largest levels cost no storage until an
// operation actually produces a new vector.
class LevelVec {
 public:
  enum class Kind : std::uint8_t { zero, iota, dense };

  static LevelVec zero(std::uint64_t dim, std::uint64_t p) { return LevelVec(Kind::zero, dim, p); }

  static LevelVec iota(std::uint64_t dim, std::uint64_t p, bool bump_last) {
    LevelVec v(Kind::iota, dim, p);
    v.bump_ = bump_last;
    std::uint64_t s = dim * (dim + 1) / 2 + (bump_last ? 1 : 0);
    v.sum_ = std::uint32_t(s % p);
    v.nonzero_ = dim > 0;
    return v;
  }

  static LevelVec dense(std::uint64_t dim, std::uint64_t p, std::vector<std::uint32_t> data,
                        std::uint32_t sum, bool nonzero) {
    LevelVec v(Kind::dense, dim, p);
    v.data_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(data));
    v.sum_ = sum;
    v.nonzero_ = nonzero;
    return v;
  }

  Kind kind() const { return kind_; }
  std::uint64_t dim() const { return dim_; }
  std::uint64_t prime() const { return p_; }
  std::uint32_t coord_sum() const { return sum_; }
  bool any_nonzero() const { return nonzero_; }

  std::uint32_t at(std::uint64_t i) const {
    switch (kind_) {
      case Kind::zero: return 0;
      case Kind::iota: return std::uint32_t(i + 1 == dim_ && bump_ ? dim_ + 1 : i + 1);
      default: return (*data_)[i];
    }
  }

 private:
  LevelVec(Kind kind, std::uint64_t dim, std::uint64_t p) : kind_(kind), dim_(dim), p_(p) {}

  Kind kind_;
  bool bump_ = false;
  std::uint64_t dim_;
  std::uint64_t p_;
  std::uint32_t sum_ = 0;
  bool nonzero_ = false;
  std::shared_ptr<const std::vector<std::uint32_t>> data_;
};

struct TowerLevel {
  unsigned index = 0;  // 1-based
  std::uint64_t prime = 0;
  std::uint64_t dim = 1;
  std::vector<unsigned> acting_levels;  // ascending, 1-based; the coordinate tuple axes
  std::vector<std::uint64_t> radices;   // primes of the acting levels
  std::vector<std::uint64_t> strides;   // mixed-radix strides, last axis least significant
  LevelVec witness = LevelVec::zero(1, 2);
};

struct Tower {
  std::vector<TowerLevel> levels;

  BigInt order() const {
    BigInt o = 1;
    for (const auto& lvl : levels)
      for (std::uint64_t i = 0; i < lvl.dim; ++i) o *= lvl.prime;
    return o;
  }
};

struct LayeredElement {
  std::vector<LevelVec> vecs;  // one per level, innermost first
};

// ---------------------------------------------------------------------------
// Group law

namespace detail {

// Walk dst indices 0..dim-1 while tracking the source index dst - shift in
// the mixed-radix tuple space. fn(dst_flat, src_flat).
template <typename Fn>
void for_each_shifted(const TowerLevel& lvl, const std::vector<std::uint32_t>& shift,
                      std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  std::size_t m = lvl.radices.size();
  std::vector<std::uint64_t> dst_digit(m, 0), src_digit(m, 0);
  std::uint64_t src = 0;
  std::uint64_t rem = begin;
  for (std::size_t k = 0; k < m; ++k) {
    dst_digit[k] = rem / lvl.strides[k];
    rem %= lvl.strides[k];
    src_digit[k] = (dst_digit[k] + lvl.radices[k] - shift[k]) % lvl.radices[k];
    src += src_digit[k] * lvl.strides[k];
  }
  for (std::uint64_t u = begin; u < end; ++u) {
    fn(u, src);
    // odometer step on the least significant axis upwards
    for (std::size_t k = m; k-- > 0;) {
      if (++src_digit[k] == lvl.radices[k]) {
        src_digit[k] = 0;
        src -= (lvl.radices[k] - 1) * lvl.strides[k];
      } else {
        src += lvl.strides[k];
      }
      if (++dst_digit[k] == lvl.radices[k]) {
        dst_digit[k] = 0;
      } else {
        break;
      }
    }
  }
}

// result[u] = a[u] + b[u - shift]  (negate_b: result[u] = -b[u - shift]).
inline LevelVec level_combine(const TowerLevel& lvl, const LevelVec& a, const LevelVec& b,
                              const std::vector<std::uint32_t>& shift, bool negate_b,
                              unsigned workers) {
  bool shifted = false;
  for (std::uint32_t s : shift) shifted |= s != 0;
  if (b.kind() == LevelVec::Kind::zero) return negate_b ? b : a;
  if (!negate_b && a.kind() == LevelVec::Kind::zero && !shifted) return b;
  const std::uint32_t p = std::uint32_t(lvl.prime);
  std::vector<std::uint32_t> out(lvl.dim);
  unsigned parts = (workers > 1 && lvl.dim >= (1u << 22)) ? workers : 1;
  std::vector<std::uint64_t> sums(parts, 0);
  std::vector<char> nonzeros(parts, 0);
  std::uint64_t chunk = (lvl.dim + parts - 1) / parts;
  parallel_for(parts, parts, [&](std::size_t w) {
    std::uint64_t lo = w * chunk, hi = std::min<std::uint64_t>(lvl.dim, lo + chunk);
    if (lo >= hi) return;
    std::uint64_t sum = 0;
    bool nonzero = false;
    auto combine = [&](std::uint64_t u, std::uint64_t src) {
      std::uint32_t bv = b.at(src);
      if (negate_b) bv = bv ? p - bv : 0;
      std::uint32_t v = a.at(u) + bv;
      if (v >= p) v -= p;
      out[u] = v;
      sum += v;
      nonzero |= v != 0;
    };
    if (shifted) {
      for_each_shifted(lvl, shift, lo, hi, combine);
    } else {
      for (std::uint64_t u = lo; u < hi; ++u) combine(u, u);
    }
    sums[w] = sum % p;
    nonzeros[w] = nonzero;
  });
  std::uint64_t sum = 0;
  bool nonzero = false;
  for (unsigned w = 0; w < parts; ++w) {
    sum += sums[w];
    nonzero |= nonzeros[w] != 0;
  }
  return LevelVec::dense(lvl.dim, lvl.prime, std::move(out), std::uint32_t(sum % p), nonzero);
}

// The coordinate translation an element applies at a level: its coordinate
// sums over the acting levels.
inline std::vector<std::uint32_t> action_shift(const TowerLevel& lvl, const LayeredElement& a) {
  std::vector<std::uint32_t> q(lvl.acting_levels.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = a.vecs[lvl.acting_levels[i] - 1].coord_sum();
  return q;
}

}  // namespace detail

inline LayeredElement identity_element(const Tower& tower) {
  LayeredElement e;
  for (const auto& lvl : tower.levels) e.vecs.push_back(LevelVec::zero(lvl.dim, lvl.prime));
  return e;
}

inline bool is_identity(const LayeredElement& a) {
  for (const auto& v : a.vecs)
    if (v.any_nonzero()) return false;
  return true;
}

inline bool element_equal(const Tower& tower, const LayeredElement& a, const LayeredElement& b) {
  for (std::size_t t = 0; t < tower.levels.size(); ++t)
    for (std::uint64_t i = 0; i < tower.levels[t].dim; ++i)
      if (a.vecs[t].at(i) != b.vecs[t].at(i)) return false;
  return true;
}

inline LayeredElement multiply(const Tower& tower, const LayeredElement& a, const LayeredElement& b,
                               unsigned workers = 0) {
  if (a.vecs.size() != tower.levels.size() || b.vecs.size() != tower.levels.size())
    throw std::invalid_argument("multiply: element shape does not match the tower");
  LayeredElement r;
  for (std::size_t t = 0; t < tower.levels.size(); ++t) {
    const TowerLevel& lvl = tower.levels[t];
    r.vecs.push_back(detail::level_combine(lvl, a.vecs[t], b.vecs[t],
                                           detail::action_shift(lvl, a), false, workers));
  }
  return r;
}

inline LayeredElement inverse(const Tower& tower, const LayeredElement& a, unsigned workers = 0) {
  if (a.vecs.size() != tower.levels.size())
    throw std::invalid_argument("inverse: element shape does not match the tower");
  LayeredElement r;
  for (std::size_t t = 0; t < tower.levels.size(); ++t) {
    const TowerLevel& lvl = tower.levels[t];
    // lower levels of r already hold the inverse, whose action undoes a's
    r.vecs.push_back(detail::level_combine(lvl, LevelVec::zero(lvl.dim, lvl.prime), a.vecs[t],
                                           detail::action_shift(lvl, r), true, workers));
  }
  return r;
}

inline LayeredElement commutator(const Tower& tower, const LayeredElement& a,
                                 const LayeredElement& b, unsigned workers = 0) {
  LayeredElement left = multiply(tower, inverse(tower, a, workers), inverse(tower, b, workers), workers);
  LayeredElement right = multiply(tower, a, b, workers);
  return multiply(tower, left, right, workers);
}

inline LayeredElement power_element(const Tower& tower, const LayeredElement& a, std::uint64_t e,
                                    unsigned workers = 0) {
  LayeredElement acc = identity_element(tower);
  LayeredElement base = a;
  while (e) {
    if (e & 1) acc = multiply(tower, acc, base, workers);
    if ((e >>= 1)) base = multiply(tower, base, base, workers);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Construction

struct Embedding {
  Graph graph;  // the target graph X, vertex t <-> level t+... vertex i (0-based) <-> level i+1
  Tower tower;
  std::vector<LayeredElement> witnesses;
};

struct EmbedOptions {
  std::uint64_t dim_budget = 1ull << 29;  // largest coordinate count a level may take
  unsigned workers = 0;
};

inline Embedding embed_graph(const Graph& x, EmbedOptions opts = {}) {
  if (x.size() < 1) throw std::invalid_argument("embed_graph: the graph needs at least one vertex");
  Embedding emb;
  emb.graph = x;
  std::vector<std::uint64_t> used_primes;
  for (unsigned t = 1; t <= x.size(); ++t) {
    TowerLevel lvl;
    lvl.index = t;
    for (unsigned r = 1; r < t; ++r)
      if (x.adjacent(r - 1, t - 1)) {
        lvl.acting_levels.push_back(r);
        lvl.radices.push_back(emb.tower.levels[r - 1].prime);
      }
    lvl.dim = 1;
    for (std::uint64_t p : lvl.radices) {
      if (lvl.dim > opts.dim_budget / p)
        throw budget_error("embed_graph: level dimension exceeds the budget");
      lvl.dim *= p;
    }
    lvl.strides.assign(lvl.radices.size(), 1);
    for (std::size_t k = lvl.radices.size(); k-- > 1;)
      lvl.strides[k - 1] = lvl.strides[k] * lvl.radices[k];

    if (t == 1) {
      lvl.prime = 2;  // base of the induction
    } else {
      std::uint64_t candidate = lvl.dim + 1;
      do {
        candidate = next_prime_above(candidate);
      } while (std::find(used_primes.begin(), used_primes.end(), candidate) != used_primes.end());
      lvl.prime = candidate;
    }
    used_primes.push_back(lvl.prime);

    // (1, 2, ..., d), or (1, ..., d-1, d+1) in case the sum vanishes mod p
    bool bump = (lvl.dim * (lvl.dim + 1) / 2) % lvl.prime == 0;
    lvl.witness = LevelVec::iota(lvl.dim, lvl.prime, bump);
    emb.tower.levels.push_back(std::move(lvl));
  }
  for (unsigned t = 1; t <= x.size(); ++t) {
    LayeredElement w = identity_element(emb.tower);
    w.vecs[t - 1] = emb.tower.levels[t - 1].witness;
    emb.witnesses.push_back(std::move(w));
  }
  return emb;
}

// ---------------------------------------------------------------------------
// Verification transcript

struct EmbeddingTranscript {
  struct OrderCheck {
    unsigned level = 0;
    std::uint64_t prime = 0;
    bool ok = false;
  };
  struct PairCheck {
    unsigned i = 0, j = 0;  // 1-based levels
    bool adjacent = false;
    bool commutator_nontrivial = false;
    bool ok = false;
  };
  struct SumCheck {
    unsigned level = 0;
    std::uint64_t sum = 0;  // the sum-zero functional at the witness; nonzero keeps it off G'
    bool ok = false;
  };

  bool ok = false;
  std::vector<OrderCheck> orders;
  std::vector<PairCheck> pairs;
  std::vector<SumCheck> sums;

  std::string to_text() const {
    std::ostringstream os;
    os << "embedding transcript: " << (ok ? "all checks passed" : "FAILED") << "\n";
    for (const auto& c : orders)
      os << "  order(x_" << c.level << ") = " << c.prime << (c.ok ? "" : "  (FAILED)") << "\n";
    for (const auto& c : pairs)
      os << "  [x_" << c.i << ", x_" << c.j << "] " << (c.commutator_nontrivial ? "!=" : "==")
         << " 1, vertices " << (c.adjacent ? "adjacent" : "non-adjacent")
         << (c.ok ? "" : "  (FAILED)") << "\n";
    for (const auto& c : sums)
      os << "  coordinate sum of x_" << c.level << " is " << c.sum
         << " != 0: stays outside every commutator subgroup" << (c.ok ? "" : "  (FAILED)") << "\n";
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = ok;
    auto os = nlohmann::ordered_json::array();
    for (const auto& c : orders)
      os.push_back({{"level", c.level}, {"prime", c.prime}, {"ok", c.ok}});
    j["orders"] = std::move(os);
    auto ps = nlohmann::ordered_json::array();
    for (const auto& c : pairs)
      ps.push_back({{"i", c.i},
                    {"j", c.j},
                    {"adjacent", c.adjacent},
                    {"commutator_nontrivial", c.commutator_nontrivial},
                    {"ok", c.ok}});
    j["pairs"] = std::move(ps);
    auto ss = nlohmann::ordered_json::array();
    for (const auto& c : sums)
      ss.push_back({{"level", c.level}, {"sum", c.sum}, {"ok", c.ok}});
    j["sums"] = std::move(ss);
    return j;
  }
};

inline EmbeddingTranscript verify_embedding(const Embedding& emb, unsigned workers = 0) {
  EmbeddingTranscript tr;
  tr.ok = true;
  const Tower& tower = emb.tower;
  std::size_t k = tower.levels.size();

  // (a) witness orders are the pairwise distinct level primes
  for (std::size_t t = 0; t < k; ++t) {
    EmbeddingTranscript::OrderCheck c;
    c.level = unsigned(t + 1);
    c.prime = tower.levels[t].prime;
    c.ok = !is_identity(emb.witnesses[t]) &&
           is_identity(power_element(tower, emb.witnesses[t], c.prime, workers));
    for (std::size_t r = 0; r < t; ++r)
      if (tower.levels[r].prime == c.prime) c.ok = false;
    tr.ok &= c.ok;
    tr.orders.push_back(c);
  }

  // (b) commutator pattern matches the graph
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      EmbeddingTranscript::PairCheck c;
      c.i = unsigned(i + 1);
      c.j = unsigned(j + 1);
      c.adjacent = emb.graph.adjacent(i, j);
      c.commutator_nontrivial =
          !is_identity(commutator(tower, emb.witnesses[i], emb.witnesses[j], workers));
      c.ok = c.adjacent == c.commutator_nontrivial;
      tr.ok &= c.ok;
      tr.pairs.push_back(c);
    }

  // (c) the sum-of-coordinates functional keeps each witness outside the
  // commutator subgroup of every tower group above it
  for (std::size_t t = 0; t < k; ++t) {
    EmbeddingTranscript::SumCheck c;
    c.level = unsigned(t + 1);
    c.sum = tower.levels[t].witness.coord_sum();
    c.ok = c.sum != 0;
    tr.ok &= c.ok;
    tr.sums.push_back(c);
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Materialization into an explicit FiniteGroup (small towers only)

class TowerGroupRep : public GroupRep {
 public:
  explicit TowerGroupRep(Tower tower) : tower_(std::move(tower)) {
    BigInt order = tower_.order();
    if (order > 1000000000) throw budget_error("TowerGroupRep: order too large to enumerate");
    size_ = std::uint64_t(order);
    if (size_ <= 200000) {
      decoded_.reserve(std::size_t(size_));
      for (Elem a = 0; a < size_; ++a) decoded_.push_back(decode(a));
    }
  }

  std::size_t size() const override { return std::size_t(size_); }

  Elem mul(Elem a, Elem b) const override {
    if (!decoded_.empty()) return encode(multiply(tower_, decoded_[a], decoded_[b]));
    return encode(multiply(tower_, decode(a), decode(b)));
  }

  Elem one() const override { return 0; }

  std::string element_name(Elem a) const override {
    LayeredElement e = decode(a);
    std::ostringstream os;
    for (std::size_t t = 0; t < tower_.levels.size(); ++t) {
      os << (t ? "|" : "");
      for (std::uint64_t i = 0; i < tower_.levels[t].dim; ++i)
        os << (i ? "," : "") << e.vecs[t].at(i);
    }
    return os.str();
  }

  LayeredElement decode(Elem a) const {
    LayeredElement e;
    std::uint64_t rest = a;
    for (const auto& lvl : tower_.levels) {
      std::vector<std::uint32_t> coords(lvl.dim);
      std::uint64_t sum = 0;
      bool nonzero = false;
      for (std::uint64_t i = 0; i < lvl.dim; ++i) {
        coords[i] = std::uint32_t(rest % lvl.prime);
        rest /= lvl.prime;
        sum += coords[i];
        nonzero |= coords[i] != 0;
      }
      e.vecs.push_back(LevelVec::dense(lvl.dim, lvl.prime, std::move(coords),
                                       std::uint32_t(sum % lvl.prime), nonzero));
    }
    return e;
  }

  Elem encode(const LayeredElement& e) const {
    std::uint64_t id = 0, stride = 1;
    for (std::size_t t = 0; t < tower_.levels.size(); ++t) {
      const auto& lvl = tower_.levels[t];
      for (std::uint64_t i = 0; i < lvl.dim; ++i) {
        id += e.vecs[t].at(i) * stride;
        stride *= lvl.prime;
      }
    }
    return Elem(id);
  }

  const Tower& tower() const { return tower_; }

 private:
  Tower tower_;
  std::uint64_t size_ = 0;
  std::vector<LayeredElement> decoded_;
};

struct MaterializedTower {
  FiniteGroup group;
  std::vector<Elem> witness_ids;
};

inline MaterializedTower materialize(const Embedding& emb, std::uint64_t budget = 10000) {
  if (emb.tower.order() > budget) throw budget_error("materialize: tower order exceeds the budget");
  auto rep = std::make_shared<TowerGroupRep>(emb.tower);
  MaterializedTower out;
  for (const auto& w : emb.witnesses) out.witness_ids.push_back(rep->encode(w));
  out.group = FiniteGroup(rep, "tower[" + emb.tower.order().str() + "]");
  return out;
}

// The closing move of the construction: realize the tower inside a symmetric
// group via the regular action, so the witnesses sit in the non-nilpotent
// graph of S_m itself (S_m has trivial hypercenter for m >= 3). Only
// feasible while m! stays within the budget; k = 1 lands in S_3 directly.
struct SymmetricRealization {
  unsigned degree = 0;
  std::vector<Permutation> witnesses;
};

inline std::optional<SymmetricRealization> realize_in_symmetric_group(const Embedding& emb,
                                                                      std::uint64_t budget = 1000000) {
  if (emb.tower.levels.size() == 1) {
    SymmetricRealization out;
    out.degree = 3;
    out.witnesses.push_back(parse_cycles("(1 2)", 3));
    return out;
  }
  BigInt order = emb.tower.order();
  if (order > 12) return std::nullopt;  // 13! is already past any sane budget
  unsigned m = unsigned(order);
  BigInt mf = factorial_big(m);
  if (mf > budget) return std::nullopt;

  auto rep = std::make_shared<TowerGroupRep>(emb.tower);
  SymmetricRealization out;
  out.degree = m;
  for (const auto& w : emb.witnesses) {
    std::vector<unsigned> images(m);
    for (Elem g = 0; g < m; ++g) images[g] = rep->mul(rep->encode(w), g);
    out.witnesses.push_back(Permutation::from_images(std::move(images)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tower export: everything needed for independent re-verification. Action
// tables are written per acting witness as coordinate permutation lists,
// skipped above the list cap.

inline nlohmann::ordered_json tower_to_json(const Embedding& emb, std::uint64_t action_list_cap = 100000) {
  nlohmann::ordered_json j;
  j["vertices"] = emb.graph.size();
  j["order"] = emb.tower.order().str();
  auto levels = nlohmann::ordered_json::array();
  for (const auto& lvl : emb.tower.levels) {
    nlohmann::ordered_json lj;
    lj["index"] = lvl.index;
    lj["prime"] = lvl.prime;
    lj["dim"] = lvl.dim;
    lj["acting_levels"] = lvl.acting_levels;
    if (lvl.dim <= action_list_cap) {
      auto coords = nlohmann::ordered_json::array();
      for (std::uint64_t i = 0; i < lvl.dim; ++i) coords.push_back(lvl.witness.at(i));
      lj["witness"] = std::move(coords);
      nlohmann::ordered_json actions;
      for (std::size_t a = 0; a < lvl.acting_levels.size(); ++a) {
        std::vector<std::uint32_t> shift(lvl.acting_levels.size(), 0);
        shift[a] = emb.tower.levels[lvl.acting_levels[a] - 1].witness.coord_sum();
        std::vector<std::uint64_t> images(lvl.dim);
        detail::for_each_shifted(lvl, shift, 0, lvl.dim,
                                 [&](std::uint64_t dst, std::uint64_t src) { images[src] = dst; });
        actions["x" + std::to_string(lvl.acting_levels[a])] = images;
      }
      lj["action"] = std::move(actions);
    } else {
      lj["witness"] = "iota";  // (1, 2, ..., dim), too large to list
      lj["action"] = "translation by per-level coordinate sums";
    }
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace nilgraph
