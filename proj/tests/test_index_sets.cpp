#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mla/index_sets.hpp"
#include "mla/lattice.hpp"

using namespace mla;
using doctest::Approx;

namespace {

// Visits every h in the box [-bound, bound]^d in lexicographic order.
template <class Visit>
void for_each_in_box(std::size_t d, std::int64_t bound, Visit&& visit) {
  std::vector<std::int64_t> h(d, -bound);
  while (true) {
    visit(Frequency(h));
    std::size_t j = d;
    while (j > 0) {
      --j;
      if (h[j] < bound) {
        ++h[j];
        break;
      }
      h[j] = -bound;
      if (j == 0) return;
    }
  }
}

std::vector<Frequency> box(std::size_t d, std::int64_t bound) {
  std::vector<Frequency> out;
  for_each_in_box(d, bound, [&](Frequency h) { out.push_back(std::move(h)); });
  return out;
}

std::vector<Frequency> brute_unweighted(std::size_t d, double radius) {
  std::vector<Frequency> out;
  for (auto& h : box(d, static_cast<std::int64_t>(std::ceil(radius)) + 1)) {
    double p = 1.0;
    for (auto c : h.components())
      if (c != 0) p *= std::abs(static_cast<double>(c));
    if (p < radius) out.push_back(h);
  }
  return out;
}

Weights random_weights(std::mt19937_64& rng, std::size_t d, double low) {
  std::uniform_real_distribution<double> g(low, 1.0);
  std::vector<double> w(d);
  for (auto& x : w) x = g(rng);
  return Weights::product(w);
}

std::uint64_t random_prime(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  std::uniform_int_distribution<std::uint64_t> n(lo, hi);
  std::uint64_t p = next_odd_prime(n(rng));
  while (p > hi) p = next_odd_prime(n(rng));
  return p;
}

}  // namespace

TEST_CASE("enumerate_unweighted examples") {
  const auto a = enumerate_unweighted(1, 3.0);
  REQUIRE(a.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(a[i] == Frequency{i - 2});
  CHECK(enumerate_unweighted(3, 1.0).empty());
  CHECK(enumerate_unweighted(2, 0.5).empty());
  const auto b = enumerate_unweighted(2, 2.0);
  CHECK(b.size() == 9);
  CHECK(b.frequencies() == box(2, 1));
  CHECK_THROWS_AS(enumerate_unweighted(0, 3.0), std::invalid_argument);
}

TEST_CASE("enumerate_unweighted matches brute force") {
  for (std::size_t d = 1; d <= 3; ++d)
    for (double radius : {1.5, 2.0, 3.0, 4.5, 7.0, 12.0, 15.5})
      CHECK(enumerate_unweighted(d, radius).frequencies() == brute_unweighted(d, radius));
}

TEST_CASE("enumerate_weighted examples") {
  for (double alpha : {0.6, 1.0, 2.5})
    CHECK(enumerate_weighted(alpha, Weights::uniform(2, 1.0), 6.0).frequencies() ==
          enumerate_unweighted(2, 6.0).frequencies());
  // r values: 0 -> 1, +-1 -> 4, +-2 -> 16; the boundary r = L^{2 alpha} is excluded
  const auto quarter = Weights::uniform(1, 0.25);
  CHECK(enumerate_weighted(1.0, quarter, 2.0).frequencies() == std::vector<Frequency>{Frequency{0}});
  CHECK(enumerate_weighted(1.0, quarter, 4.0).frequencies() ==
        std::vector<Frequency>{Frequency{-1}, Frequency{0}, Frequency{1}});
  CHECK(enumerate_weighted(1.0, Weights::uniform(2, 0.5), 0.0).empty());
}

TEST_CASE("enumerate_weighted matches brute force, explicit weights") {
  const auto w = Weights::explicit_subsets(2, {{0b01, 0.8}, {0b10, 0.3}, {0b11, 0.1}});
  for (double alpha : {0.7, 1.5}) {
    for (double radius : {2.0, 5.0, 9.5}) {
      std::vector<Frequency> expected;
      for (auto& h : box(2, 12))
        if (root_decay(h, alpha, w) < radius) expected.push_back(h);
      CHECK(enumerate_weighted(alpha, w, radius).frequencies() == expected);
    }
  }
}

TEST_CASE("index set properties over random configurations") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> alpha_dist(0.6, 3.0), radius_dist(0.0, 12.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto w = random_weights(rng, d, 0.05);
    const double alpha = alpha_dist(rng);
    const double r1 = radius_dist(rng), r2 = r1 + radius_dist(rng) / 3;
    const auto small = enumerate_weighted(alpha, w, r1);
    const auto large = enumerate_weighted(alpha, w, r2);
    CHECK(small.is_subset_of(large));
    CHECK(small.is_subset_of(enumerate_unweighted(d, r1)));
    CHECK(std::is_sorted(small.begin(), small.end()));
    if (!small.empty()) CHECK(small.size() % 2 == 1);
    for (const auto& h : small) CHECK(small.contains(-h));
  }
}

TEST_CASE("cardinality bound dominates enumeration") {
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  CHECK(cardinality_bound(1.0, 1.0, Weights::uniform(1, 1.0), 0.0) == 0.0);
  CHECK(cardinality_bound(1.0, 1.0, Weights::uniform(1, 1.0), 3.0) == Approx((1 + 2 * zeta2) * 9));
  CHECK(cardinality_bound(1.0, 1.0, Weights::uniform(1, 1.0), 3.0) == Approx(38.6088).epsilon(1e-5));
  CHECK(cardinality_bound(1.0, 1.0, Weights::uniform(2, 1.0), 2.0) ==
        Approx(73.6119).epsilon(1e-5));
  CHECK(enumerate_unweighted(2, 2.0).size() <= 73.6);
  CHECK_THROWS_AS(cardinality_bound(1.0, 0.4, Weights::uniform(1, 1.0), 2.0), std::invalid_argument);
}

TEST_CASE("compute_n_star examples") {
  const auto ones = Weights::uniform(1, 1.0);
  for (double alpha : {0.7, 1.0, 2.0}) {
    CHECK(compute_n_star(17, alpha, ones) == 1.0);
    CHECK(compute_n_star(97, alpha, ones) == 3.0);
  }
  CHECK(enumerate_weighted(1.0, ones, 3.0).size() == 5);
  CHECK(enumerate_weighted(1.0, ones, 3.0 * (1 + 1e-9)).size() == 7);
  CHECK(compute_n_star(3, 1.0, ones) == 1.0);  // budget 0: the smallest value
  CHECK_THROWS_AS(compute_n_star(15, 1.0, ones), std::invalid_argument);
}

TEST_CASE("compute_n_star for tiny weights exceeds N/2 but keeps its characterization") {
  // gamma = 1e-3, alpha = 1: root_decay(h) = 31.6 |h| in d = 1
  const auto w = Weights::uniform(1, 1e-3);
  const double n_star = compute_n_star(97, 1.0, w);
  CHECK(n_star > 97 / 2.0);
  CHECK(enumerate_weighted(1.0, w, n_star).size() <= 6);
  CHECK(enumerate_weighted(1.0, w, n_star * (1 + 1e-9)).size() > 6);
}

TEST_CASE("compute_n_star agrees with box brute force") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha_dist(0.6, 3.0);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const std::uint64_t n = d == 3 ? random_prime(rng, 17, 61) : random_prime(rng, 17, 257);
    const auto w = random_weights(rng, d, 0.1);
    const double alpha = alpha_dist(rng);
    std::vector<double> values;
    for_each_in_box(d, static_cast<std::int64_t>(n / 2),
                    [&](const Frequency& h) { values.push_back(root_decay(h, alpha, w)); });
    std::sort(values.begin(), values.end());
    const auto m = n_star_budget(n);
    CAPTURE(n);
    CAPTURE(d);
    CHECK(compute_n_star(n, alpha, w) == values[m]);
  }
  // one full-size d = 3 box at N = 257
  const auto w = Weights::product({0.9, 0.5, 0.2});
  std::vector<double> values;
  for_each_in_box(3, 128, [&](const Frequency& h) { values.push_back(root_decay(h, 1.25, w)); });
  std::nth_element(values.begin(), values.begin() + 16, values.end());
  CHECK(compute_n_star(257, 1.25, w) == values[16]);
}

TEST_CASE("n_star_lower_bound") {
  const auto ones = Weights::uniform(1, 1.0);
  CHECK(n_star_lower_bound(97, 1.0, 1.0, ones) == Approx(1.18264).epsilon(1e-5));
  CHECK(n_star_lower_bound(17, 1.0, 1.0, ones) == Approx(0.48282).epsilon(1e-5));
  CHECK(n_star_lower_bound(97, 1.0, 1.0, ones) <= compute_n_star(97, 1.0, ones));
  CHECK(n_star_lower_bound(17, 1.0, 1.0, ones) <= compute_n_star(17, 1.0, ones));
  CHECK(n_star_lower_bound(3, 2.0, 0.5, Weights::uniform(3, 0.3)) > 0.0);
}

TEST_CASE("r_sum_bound") {
  const auto ones = Weights::uniform(1, 1.0);
  const double pi = std::numbers::pi;
  const double t = 1 + pi * pi / 3;
  const double expected = 32 * t / (96 * 9.0) + 16 * 32 * (std::pow(pi, 4) / 90) / std::pow(97.0, 4);
  CHECK(r_sum_bound(97, 1.0, 1.0, ones, 3.0) == Approx(expected).epsilon(1e-13));
  CHECK(r_sum_bound(97, 1.0, 1.0, ones, 3.0) == Approx(0.15889).epsilon(1e-4));

  // weights -> 0: only the first term with T -> 1 survives
  const double limit = 32.0 / (0.5 * 96 * std::pow(3.0, 4 - 3.0));
  CHECK(r_sum_bound(97, 1.0, 1.5, Weights::uniform(2, 1e-15), 3.0) ==
        Approx(limit).epsilon(1e-10));

  double previous = r_sum_bound(31, 1.3, 1.0, ones, 3.0);
  for (std::uint64_t n : {61, 127, 251, 509}) {
    const double now = r_sum_bound(n, 1.3, 1.0, ones, 3.0);
    CHECK(now <= previous);
    previous = now;
  }
  CHECK_THROWS_AS(r_sum_bound(97, 1.0, 2.0, ones, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(r_sum_bound(97, 1.0, 0.5, ones, 3.0), std::invalid_argument);
}

TEST_CASE("theorem_bound") {
  const auto ones = Weights::uniform(1, 1.0);
  CHECK(theorem_bound(97, 73, 1.0, 1.0, ones, 0.0) == 0.0);

  // Second route: explicit-subset weights (subset-sum T) and a literal
  // transcription of the bound.
  const auto expl = Weights::explicit_subsets(1, {{1, 1.0}});
  const double pi = std::numbers::pi;
  const double n = 97, ns = 3.0, alpha = 1.0;
  const double t = 1.0 + 2.0 * (pi * pi / 6);
  const double r_sum = 32.0 / (2.0 - 1.0) * t / ((n - 1) * std::pow(ns, 4 * alpha - 2 * alpha)) +
                       16.0 / std::pow(n, 4 * alpha) * std::pow(2.0, 1 + 4 * alpha) * std::pow(pi, 4) / 90;
  const double eps2 = 32 * (2 * n - 1) / (std::pow(ns, 2 * alpha) * (n - 1)) *
                      ((991 * n - 255) / (120 * (2 * n - 1)) +
                       std::max(960.0, std::sqrt(240 * std::pow(ns, 4 * alpha) * r_sum)));
  CHECK(theorem_bound(97, 73, 1.0, 1.0, ones, 1.0) == Approx(eps2).epsilon(1e-12));
  CHECK(theorem_bound(97, 73, 1.0, 1.0, expl, 1.0) == Approx(eps2).epsilon(1e-12));
  CHECK(theorem_bound(97, 73, 1.0, 1.0, ones, 2.5) == Approx(2.5 * eps2).epsilon(1e-12));
  // sqrt(240 * 81 * 0.159) = 55.7 < 960: the constant branch is active
  CHECK(std::sqrt(240 * std::pow(ns, 4) * r_sum) < 960.0);

  CHECK_THROWS_AS(theorem_bound(97, 72, 1.0, 1.0, ones, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(theorem_bound(91, 73, 1.0, 1.0, ones, 1.0), std::invalid_argument);
}

TEST_CASE("IndexSet text round trip and validation") {
  const auto a = enumerate_unweighted(2, 3.5);
  std::stringstream ss;
  a.write_text(ss);
  const auto b = IndexSet::read_text(ss, 2);
  CHECK(a.frequencies() == b.frequencies());
  std::istringstream bad("1 2 3\n");
  CHECK_THROWS(IndexSet::read_text(bad, 2));
  CHECK_THROWS_AS(IndexSet(1, {Frequency{1}, Frequency{1}}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet(2, {Frequency{1}}), std::invalid_argument);
  CHECK_THROWS_AS(Frequency({std::int64_t{1} << 31}), std::out_of_range);
}
