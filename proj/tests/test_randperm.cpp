#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "nilgraph/nilgraph.hpp"
#include "nilgraph/randperm.hpp"

using namespace nilgraph;

namespace {

std::uint64_t fact(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Permutation perm_of_type(unsigned n, const std::vector<unsigned>& lengths) {
  std::vector<unsigned> im(n);
  std::iota(im.begin(), im.end(), 0u);
  unsigned base = 0;
  for (unsigned len : lengths) {
    for (unsigned i = 0; i < len; ++i) im[base + i] = base + (i + 1) % len;
    base += len;
  }
  return Permutation::from_images(im);
}

}  // namespace

TEST_CASE("sampling is deterministic and degenerate at n = 1") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 20; ++i) CHECK(sample_permutation(8, a) == sample_permutation(8, b));

  SplitMix64 c(7);
  for (int i = 0; i < 5; ++i) CHECK(sample_permutation(1, c) == Permutation(1));

  CHECK_THROWS_AS(sample_permutation(0, c), std::invalid_argument);
}

TEST_CASE("c(tau, 1) is uniform on {1..n}: Monte Carlo at n = 6") {
  const unsigned n = 6;
  const std::uint64_t samples = 100000;
  std::map<unsigned, std::uint64_t> freq;
  for (std::uint64_t i = 0; i < samples; ++i) {
    SplitMix64 rng = SplitMix64::for_sample(20240611, i);
    ++freq[sample_permutation(n, rng).cycle_len(0)];
  }
  double expected = double(samples) / n;
  double sigma = std::sqrt(double(samples) * (1.0 / n) * (1.0 - 1.0 / n));
  for (unsigned k = 1; k <= n; ++k) {
    CHECK(freq[k] > expected - 3 * sigma);
    CHECK(freq[k] < expected + 3 * sigma);
  }
}

TEST_CASE("joint cycle statistics, exact") {
  auto st2 = joint_cycle_stats_exact(2);
  CHECK(st2.same_cycle_count == 1);
  CHECK(st2.pair_counts.at({1, 1}) == 1);

  auto st3 = joint_cycle_stats_exact(3);
  CHECK(st3.same_cycle_count == 3);
  CHECK(st3.pair_counts.at({1, 1}) == 1);
  CHECK(st3.pair_counts.at({1, 2}) == 1);
  CHECK(st3.pair_counts.at({2, 1}) == 1);

  auto st8 = joint_cycle_stats_exact(8);
  CHECK(st8.same_cycle_count == fact(8) / 2);
  CHECK(st8.pair_counts.size() == 8 * 7 / 2);
  for (const auto& [ab, count] : st8.pair_counts) {
    CHECK(ab.first + ab.second <= 8);
    CHECK(count == fact(6));
  }

  for (unsigned n = 2; n <= 7; ++n) {
    auto st = joint_cycle_stats_exact(n);
    CHECK(st.same_cycle_count == fact(n) / 2);
    std::uint64_t rest = 0;
    for (const auto& [ab, count] : st.pair_counts) {
      (void)ab;
      CHECK(count == fact(n - 2));
      rest += count;
    }
    CHECK(st.same_cycle_count + rest == fact(n));
  }
}

TEST_CASE("prefix partitions as restricted growth strings") {
  CHECK(prefix_partition_rgs(perm_of_type(4, {2, 2}), 4) == "0011");
  CHECK(prefix_partition_rgs(perm_of_type(4, {4}), 4) == "0000");
  CHECK(prefix_partition_rgs(Permutation(4), 4) == "0123");
  CHECK(prefix_partition_rgs(perm_of_type(5, {2, 3}), 2) == "00");
  CHECK_THROWS_AS(prefix_partition_rgs(Permutation(3), 4), std::invalid_argument);
}

TEST_CASE("prefix partition distribution does not depend on n") {
  // point pair in the same cycle with probability 1/2
  for (unsigned n = 2; n <= 8; ++n) {
    auto d = partition_distribution(2, n, SampleMode::exact);
    CHECK(d.counts.at("00") * 2 == d.total);
  }

  // identical k = 3 distributions across n (scaled to a common denominator)
  auto base3 = partition_distribution(3, 3, SampleMode::exact);
  for (unsigned n = 4; n <= 8; ++n) {
    auto d = partition_distribution(3, n, SampleMode::exact);
    CHECK(d.counts.size() == base3.counts.size());
    for (const auto& [key, count] : base3.counts)
      CHECK(count * d.total == d.counts.at(key) * base3.total);
  }

  // the "both pairs collapse" mass at k = 4 is 7/24
  for (unsigned n = 4; n <= 8; ++n) {
    auto d = partition_distribution(4, n, SampleMode::exact);
    std::uint64_t both = 0;
    for (const auto& [key, count] : d.counts)
      if (key[0] == key[1] && key[2] == key[3]) both += count;
    CHECK(both * 24 == 7 * d.total);
  }

  CHECK_THROWS_AS(partition_distribution(5, 4, SampleMode::exact), std::invalid_argument);
}

TEST_CASE("monte carlo partition distribution approximates the exact one") {
  auto exact = partition_distribution(3, 6, SampleMode::exact);
  auto mc = partition_distribution(3, 6, SampleMode::monte_carlo, 40000, 99);
  CHECK(mc.total == 40000);
  for (const auto& [key, count] : exact.counts) {
    double p = double(count) / double(exact.total);
    double got = double(mc.counts.at(key)) / double(mc.total);
    double sigma = std::sqrt(p * (1 - p) / double(mc.total));
    CHECK(std::abs(got - p) < 4 * sigma);
  }
}

TEST_CASE("the point-deletion map is n-to-1 and preserves prefix partitions") {
  for (unsigned n = 3; n <= 6; ++n) {
    std::map<Permutation, unsigned> preimages;
    for_each_permutation(n, [&](const Permutation& t) {
      Permutation f = delete_top_point(t);
      CHECK(f.degree() == n - 1);
      ++preimages[f];
      unsigned k = std::min(3u, n - 1);
      CHECK(prefix_partition_rgs(f, k) == prefix_partition_rgs(t, k));
    });
    CHECK(preimages.size() == fact(n - 1));
    for (const auto& [img, count] : preimages) {
      (void)img;
      CHECK(count == n);
    }
  }
}

TEST_CASE("no cycle-ratio violations at desk scale") {
  CHECK(cycle_ratio_violations(4, 2).empty());
  CHECK(cycle_ratio_violations(5, 3).empty());
  CHECK(cycle_ratio_violations(5, 5).empty());
  CHECK(cycle_ratio_violations(6, 3, 2).empty());
  CHECK_THROWS_AS(cycle_ratio_violations(6, 4), std::invalid_argument);
}

TEST_CASE("exact nilpotent-partner fractions") {
  // (12)(34) in S_4: 16/24, the small-n counterexample to the half bound
  auto f = nilpotent_partner_fraction_exact(perm_of_type(4, {2, 2}));
  CHECK(f.hits == 16);
  CHECK(f.total == 24);

  // 3-cycle in S_6: bounded by 1/3 + 2 h(6,3) / (6*5)
  auto g = nilpotent_partner_fraction_exact(perm_of_type(6, {3}));
  double bound = 1.0 / 3 + 2.0 * 5 / 30;  // h(6,3) = 5
  CHECK(g.value() <= bound);
}

TEST_CASE("exact fractions tie back to graph degrees") {
  for (unsigned n = 3; n <= 5; ++n) {
    FiniteGroup sn = make_group("S" + std::to_string(n));
    const auto& rep = dynamic_cast<const PermGroupRep&>(sn.rep());
    Graph g = build_nilgraph(sn);
    for (Elem s = 0; s < sn.size(); ++s) {
      if (!is_prime(sn.element_order(s))) continue;
      auto f = nilpotent_partner_fraction_exact(rep.permutation(s));
      CHECK(g.degree(s) == f.total - f.hits);
    }
  }
}

TEST_CASE("monte carlo fraction for a transposition in S19") {
  Permutation sigma = perm_of_type(19, {2});
  auto est = nilpotent_partner_fraction_mc(sigma, 2000, 12345, 2);
  // well under 1/2; the transposition-case bound is 5/19
  CHECK(est.estimate + 3 * est.stderr_est < 0.5);
  CHECK(est.estimate < 5.0 / 19 + 3 * est.stderr_est);

  auto rerun = nilpotent_partner_fraction_mc(sigma, 2000, 12345, 1);
  CHECK(rerun.hits == est.hits);  // worker count does not change the stream

  CHECK_THROWS_AS(nilpotent_partner_fraction_mc(perm_of_type(6, {2, 3}), 10, 1),
                  std::invalid_argument);
}
