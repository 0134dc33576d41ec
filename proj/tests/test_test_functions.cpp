#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mla/index_sets.hpp"
#include "mla/median_algorithm.hpp"
#include "mla/test_functions.hpp"
#include "support/quadrature.hpp"

using namespace mla;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// f1's factor has derivative jumps at 1/2 -+ 5/11
const std::vector<double> kF1Breaks{1.0 / 22.0, 21.0 / 22.0};

double g1(double x) {
  const double t = x - 0.5;
  return 121.0 * std::sqrt(33.0) / 100.0 * std::max(25.0 / 121.0 - t * t, 0.0);
}

double g2(double x) { return (x - 0.5) * (x - 0.5) * std::sin(2 * kPi * x - kPi); }

// sum_{|k| <= H} |c_k|^2 summed smallest-first
double partial_parseval(const Factor1d& g, std::int64_t H) {
  double s = 0.0;
  for (std::int64_t k = H; k >= 1; --k) s += std::norm(g.coefficient(k)) + std::norm(g.coefficient(-k));
  return s + std::norm(g.coefficient(0));
}

}  // namespace

TEST_CASE("point values") {
  const double centre[2] = {0.5, 0.5};
  CHECK(f1_eval(centre) == Approx(std::pow(121.0 * std::sqrt(33.0) / 100.0 * 25.0 / 121.0, 2)));
  CHECK(f1_eval(centre) == Approx(2.0625).epsilon(1e-12));
  const double edge[1] = {0.02};
  CHECK(f1_eval(edge) == 0.0);
  const double zero[2] = {0.0, 0.3};
  CHECK(std::abs(f2_eval(zero)) < 1e-16);
  const double quarter[1] = {0.25};
  CHECK(f2_eval(quarter) == Approx(-1.0 / 16.0).epsilon(1e-14));
  CHECK(make_f1(2)(centre).real() == f1_eval(centre));
}

TEST_CASE("closed-form coefficients against quadrature") {
  const auto f1 = f1_factor(), f2 = f2_factor();
  double worst1 = 0.0, worst2 = 0.0;
  for (std::int64_t k = -200; k <= 200; ++k) {
    worst1 = std::max(worst1, std::abs(f1.coefficient(k) -
                                       testing::fourier_by_quadrature(g1, k, kF1Breaks)));
    worst2 = std::max(worst2, std::abs(f2.coefficient(k) - testing::fourier_by_quadrature(g2, k, {})));
  }
  CHECK(worst1 < 1e-10);
  CHECK(worst2 < 1e-10);
  CHECK(f1.coefficient(0).real() == Approx(5.0 / std::sqrt(33.0)).epsilon(1e-14));
}

TEST_CASE("norms against quadrature and Parseval") {
  const auto f1 = f1_factor(), f2 = f2_factor();
  CHECK(std::abs(f1.norm_sq - testing::norm_sq_by_quadrature(g1, kF1Breaks)) < 1e-12);
  CHECK(std::abs(f2.norm_sq - testing::norm_sq_by_quadrature(g2, {})) < 1e-12);
  const double tail1 = f1.norm_sq - partial_parseval(f1, 10000);
  const double tail2 = f2.norm_sq - partial_parseval(f2, 10000);
  CHECK(tail1 > -1e-14);
  CHECK(tail1 < 1e-6);
  CHECK(tail2 > -1e-14);
  CHECK(tail2 < 1e-10);
  CHECK(l2_norm_sq(make_f2(2)) == Approx(f2.norm_sq * f2.norm_sq).epsilon(1e-15));
  CHECK(l2_norm_sq(make_f1(3)) == 1.0);
}

TEST_CASE("multivariate coefficients") {
  const auto f1 = make_f1(2), f2 = make_f2(2);
  CHECK(fourier_coefficient(f1, {0, 0}).real() == Approx(25.0 / 33.0).epsilon(1e-14));
  CHECK(fourier_coefficient(f2, {0, 3}) == Complex(0.0));
  CHECK(fourier_coefficient(f2, {-4, 0}) == Complex(0.0));
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::int64_t> c(-300, 300);
  for (int trial = 0; trial < 200; ++trial) {
    const Frequency h{c(rng), c(rng)};
    for (const auto* fn : {&f1, &f2}) {
      const auto v = fourier_coefficient(*fn, h);
      CHECK(fourier_coefficient(*fn, -h) == std::conj(v));
      CHECK(v == fn->factors[0].coefficient(h[0]) * fn->factors[1].coefficient(h[1]));
    }
  }
  CHECK_THROWS_AS(fourier_coefficient(f1, {1}), std::invalid_argument);
  CHECK_THROWS_AS(test_function_by_name("f3", 2), std::invalid_argument);
  CHECK(test_function_by_name("f2", 3).dimension() == 3);
}

TEST_CASE("exact_l2_error") {
  const auto f1 = make_f1(2);
  const auto pool = enumerate_unweighted(2, 15.5);
  ApproximationResult res;
  res.frequencies = IndexSet(2, {pool[0], pool[5], Frequency{0, 0}});
  res.coefficients.assign(3, 0.0);
  CHECK(exact_l2_error(res, f1) == Approx(1.0).epsilon(1e-14));

  for (std::size_t i = 0; i < 3; ++i) res.coefficients[i] = fourier_coefficient(f1, res.frequencies[i]);
  CHECK(exact_l2_error(res, f1) == Approx(truncation_error(res.frequencies, f1)).epsilon(1e-12));

  const Frequency h0{2, -1};
  const auto e = make_exponential(h0);
  ApproximationResult single;
  single.frequencies = IndexSet(2, {h0});
  single.coefficients = {1.0};
  CHECK(exact_l2_error(single, e) == 0.0);

  // broken oracle: captured mass beyond the norm
  auto broken = make_f1(2);
  broken.factors[0].norm_sq = 0.5;
  CHECK_THROWS_AS(exact_l2_error(res, broken), std::runtime_error);
}

TEST_CASE("exact_l2_error agrees with Monte Carlo") {
  const auto f1 = make_f1(2);
  const auto res = universal_approximate(f1.evaluator(), {31, 9, 2, 3});
  const double exact_sq = std::pow(exact_l2_error(res, f1), 2);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int samples = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x[2] = {u(rng), u(rng)};
    const double v = std::norm(f1(x) - evaluate(res, x));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / (samples - 1));
  CHECK(std::abs(mean - exact_sq) <= 3 * se);
}

TEST_CASE("truncation_error") {
  const auto f1 = make_f1(2);
  CHECK(truncation_error(IndexSet(2), f1) == 1.0);
  const auto big = enumerate_unweighted(2, 400.0);
  CHECK(truncation_error(big, f1) < 0.01);
  const auto e = make_exponential(Frequency{1, 1});
  CHECK(truncation_error(IndexSet(2, {Frequency{1, 1}}), e) == 0.0);
  TestFunction zero = make_f2(1);
  zero.factors[0].norm_sq = 0.0;
  zero.factors[0].coefficient = [](std::int64_t) { return Complex(0.0); };
  CHECK(truncation_error(IndexSet(1, {Frequency{1}}), zero) == 0.0);

  double prev = 1.0;
  for (double L : {1.5, 3.0, 8.0, 20.0, 60.0}) {
    const double t = truncation_error(enumerate_unweighted(2, L), f1);
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("oracle_index_set") {
  const Frequency h0{-3, 2};
  const auto top = oracle_index_set(make_exponential(h0), 31);
  CHECK(top.size() == 31);
  CHECK(top[0] == h0);

  const auto f2 = make_f2(2);
  const auto o = oracle_index_set(f2, 127);
  CHECK(o.size() == 127);
  bool seen_zero = false;
  for (const auto& h : o) {
    const bool is_zero = fourier_coefficient(f2, h) == Complex(0.0);
    if (seen_zero) CHECK(is_zero);
    seen_zero = seen_zero || is_zero;
  }
  // optimal among N-subsets of the pool
  const auto f1 = make_f1(2);
  const auto best = oracle_index_set(f1, 61);
  CHECK(truncation_error(best, f1) <= truncation_error(
                                          baseline_approximate([](std::span<const double>) {
                                            return Complex(0.0);
                                          }, {61, 1, 2, 0}, 1.0, Weights::uniform(2, 1.0))
                                              .frequencies,
                                          f1));
}
