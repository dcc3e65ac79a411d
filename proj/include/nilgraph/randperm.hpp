#pragma once

// Statistics of uniformly random permutations, exact (full enumeration of
// S_n at desk scale) and Monte Carlo (seeded, reproducible regardless of
// worker count): the same-cycle law for a pair of points, the joint cycle
// length distribution, the partition a permutation induces on a prefix
// {1..k}, the point-deletion map behind its n-to-1 proof, and the cycle
// ratio consequence of pair nilpotency for prime-order permutations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilgraph/group.hpp"
#include "nilgraph/group_spec.hpp"
#include "nilgraph/parallel.hpp"
#include "nilgraph/permutation.hpp"

namespace nilgraph {

// Counter-style generator: cheap to construct, so every Monte Carlo sample
// derives its own stream from (seed, sample index) and results do not depend
// on how samples are split across workers.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  static SplitMix64 for_sample(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  }

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw from {0, ..., bound-1} by rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }
};

// Fisher-Yates; uniform over S_n and deterministic for a fixed generator state.
inline Permutation sample_permutation(unsigned n, SplitMix64& rng) {
  if (n < 1) throw std::invalid_argument("sample_permutation: n must be positive");
  std::vector<unsigned> im(n);
  std::iota(im.begin(), im.end(), 0u);
  for (unsigned i = n - 1; i > 0; --i)
    std::swap(im[i], im[std::uint64_t(rng.below(i + 1))]);
  return Permutation::from_images(std::move(im));
}

// Visit all n! permutations in lexicographic order.
template <typename Fn>
void for_each_permutation(unsigned n, Fn&& fn) {
  std::vector<unsigned> im(n);
  std::iota(im.begin(), im.end(), 0u);
  do {
    fn(Permutation::from_images(im));
  } while (std::next_permutation(im.begin(), im.end()));
}

// ---------------------------------------------------------------------------
// Joint cycle statistics of the points 1 and 2

struct JointCycleStats {
  unsigned n = 0;
  std::uint64_t same_cycle_count = 0;
  std::map<std::pair<unsigned, unsigned>, std::uint64_t> pair_counts;  // (c(t,1), c(t,2)) when split
  std::uint64_t total = 0;
};

inline JointCycleStats joint_cycle_stats_exact(unsigned n) {
  if (n < 2 || n > 10) throw std::invalid_argument("joint_cycle_stats_exact: need 2 <= n <= 10");
  JointCycleStats st;
  st.n = n;
  for_each_permutation(n, [&](const Permutation& t) {
    ++st.total;
    unsigned a = t.cycle_len(0);
    bool same = false;
    for (unsigned j = t(0); j != 0; j = t(j))
      if (j == 1) same = true;
    if (same) {
      ++st.same_cycle_count;
    } else {
      ++st.pair_counts[{a, t.cycle_len(1)}];
    }
  });
  return st;
}

// ---------------------------------------------------------------------------
// Partitions induced on the prefix {1..k} by the cycles of a permutation,
// canonicalized as restricted-growth strings ("0010" puts point 3 in a new
// class and point 4 back in the first).

inline std::string prefix_partition_rgs(const Permutation& t, unsigned k) {
  if (k > t.degree()) throw std::invalid_argument("prefix_partition_rgs: k exceeds the degree");
  std::vector<int> cls(k, -1);
  int next = 0;
  for (unsigned i = 0; i < k; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next;
    for (unsigned j = t(i); j != i; j = t(j))
      if (j < k) cls[j] = next;
    ++next;
  }
  std::string s;
  for (unsigned i = 0; i < k; ++i) s += char('0' + cls[i]);
  return s;
}

enum class SampleMode { exact, monte_carlo };

struct PartitionDistribution {
  unsigned k = 0;
  unsigned n = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
};

inline PartitionDistribution partition_distribution(unsigned k, unsigned n, SampleMode mode,
                                                    std::uint64_t samples = 0,
                                                    std::uint64_t seed = 0) {
  if (k > n) throw std::invalid_argument("partition_distribution: k exceeds n");
  PartitionDistribution dist;
  dist.k = k;
  dist.n = n;
  if (mode == SampleMode::exact) {
    if (n > 10) throw std::invalid_argument("partition_distribution: exact mode needs n <= 10");
    for_each_permutation(n, [&](const Permutation& t) {
      ++dist.counts[prefix_partition_rgs(t, k)];
      ++dist.total;
    });
  } else {
    if (samples == 0) throw std::invalid_argument("partition_distribution: sample count required");
    for (std::uint64_t i = 0; i < samples; ++i) {
      SplitMix64 rng = SplitMix64::for_sample(seed, i);
      ++dist.counts[prefix_partition_rgs(sample_permutation(n, rng), k)];
      ++dist.total;
    }
  }
  return dist;
}

// The point-deletion map S_n -> S_{n-1}: drop the top point from its cycle
// and sew the cycle back up. Each image has exactly n preimages, which is
// why prefix partitions do not depend on n.
inline Permutation delete_top_point(const Permutation& t) {
  unsigned n = t.degree();
  if (n < 2) throw std::invalid_argument("delete_top_point: degree must be at least 2");
  std::vector<unsigned> im(n - 1);
  for (unsigned j = 0; j + 1 < n; ++j) im[j] = t(j) == n - 1 ? t(n - 1) : t(j);
  return Permutation::from_images(std::move(im));
}

// ---------------------------------------------------------------------------
// Cycle ratios under pair nilpotency: if <sigma, tau> is nilpotent and sigma
// has prime order p, points in a common sigma-cycle see tau-cycle lengths
// whose ratio is an integer power of p.

struct CycleRatioViolation {
  Permutation sigma, tau;
  unsigned i = 0, j = 0;
};

inline bool is_p_power_ratio(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
  if (hi % lo) return false;
  std::uint64_t q = hi / lo;
  while (q % p == 0) q /= p;
  return q == 1;
}

inline std::vector<CycleRatioViolation> cycle_ratio_violations(unsigned n, std::uint64_t p,
                                                               unsigned workers = 0) {
  if (n > 7) throw std::invalid_argument("cycle_ratio_violations: exhaustive check needs n <= 7");
  if (!is_prime(p) || p > n) throw std::invalid_argument("cycle_ratio_violations: need a prime p <= n");
  FiniteGroup sn = make_group("S" + std::to_string(n));
  const auto& rep = dynamic_cast<const PermGroupRep&>(sn.rep());
  PairNilpotencyCache census(sn, workers);
  std::vector<CycleRatioViolation> out;
  for (Elem s = 0; s < sn.size(); ++s) {
    if (sn.element_order(s) != p) continue;
    const Permutation& sigma = rep.permutation(s);
    auto cycles = sigma.cycles();
    for (Elem t = 0; t < sn.size(); ++t) {
      if (!census.pair_nilpotent(s, t)) continue;
      const Permutation& tau = rep.permutation(t);
      for (const auto& cyc : cycles) {
        if (cyc.size() < 2) continue;
        for (std::size_t a = 0; a < cyc.size(); ++a)
          for (std::size_t b = a + 1; b < cyc.size(); ++b)
            if (!is_p_power_ratio(tau.cycle_len(cyc[a]), tau.cycle_len(cyc[b]), p))
              out.push_back({sigma, tau, cyc[a], cyc[b]});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fraction of tau with <sigma, tau> nilpotent

struct ExactFraction {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  double value() const { return total ? double(hits) / double(total) : 0.0; }
};

inline ExactFraction nilpotent_partner_fraction_exact(const Permutation& sigma) {
  if (sigma.degree() > 8)
    throw std::invalid_argument("nilpotent_partner_fraction_exact: degree too large to enumerate");
  ExactFraction f;
  for_each_permutation(sigma.degree(), [&](const Permutation& tau) {
    ++f.total;
    if (pair_nilpotent(sigma, tau)) ++f.hits;
  });
  return f;
}

struct McEstimate {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double estimate = 0.0;
  double stderr_est = 0.0;
};

inline McEstimate nilpotent_partner_fraction_mc(const Permutation& sigma, std::uint64_t samples,
                                                std::uint64_t seed, unsigned workers = 0) {
  if (!is_prime(sigma.order()))
    throw std::invalid_argument("nilpotent_partner_fraction_mc: sigma must have prime order");
  unsigned n = sigma.degree();
  std::vector<char> hit(samples, 0);  // one cell per sample: no races, no worker-count dependence
  parallel_for(std::size_t(samples), workers, [&](std::size_t i) {
    SplitMix64 rng = SplitMix64::for_sample(seed, i);
    if (pair_nilpotent(sigma, sample_permutation(n, rng))) hit[i] = 1;
  });
  McEstimate est;
  est.samples = samples;
  for (char h : hit) est.hits += h;
  est.estimate = samples ? double(est.hits) / double(samples) : 0.0;
  est.stderr_est = samples ? std::sqrt(est.estimate * (1.0 - est.estimate) / double(samples)) : 0.0;
  return est;
}

}  // namespace nilgraph
