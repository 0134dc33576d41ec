#include "mla/index_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mla/lattice.hpp"

namespace mla {

namespace {

// Relative slack for the pruning tests only. Emission always uses the exact
// strict comparison against the canonical root_decay value.
constexpr double kPruneSlack = 1e-12;

struct UnweightedWalker {
  std::size_t dimension;
  double radius;
  std::vector<std::int64_t> current;
  std::vector<Frequency> out;

  void descend(std::size_t j, double abs_product) {
    if (j == dimension) {
      out.emplace_back(current);
      return;
    }
    // largest k >= 0 with abs_product * k < radius
    auto k_max = static_cast<std::int64_t>(std::floor(radius / abs_product));
    while (k_max > 0 && abs_product * static_cast<double>(k_max) >= radius) --k_max;
    while (abs_product * static_cast<double>(k_max + 1) < radius) ++k_max;
    for (std::int64_t k = -k_max; k <= k_max; ++k) {
      current[j] = k;
      descend(j + 1, k == 0 ? abs_product : abs_product * static_cast<double>(std::abs(k)));
    }
    current[j] = 0;
  }
};

struct WeightedWalker {
  double alpha;
  const Weights& weights;
  double radius;
  double inv_two_alpha;
  std::vector<std::int64_t> current;
  std::vector<Frequency> out;

  double partial_value(double abs_product, std::uint64_t mask) const {
    return abs_product * std::pow(weights.weight(mask), -inv_two_alpha);
  }

  void descend(std::size_t j, double abs_product, std::uint64_t mask) {
    const std::size_t d = weights.dimension();
    if (j == d) {
      Frequency h(current);
      if (root_decay(h, alpha, weights) < radius) out.push_back(std::move(h));
      return;
    }
    const std::uint64_t with_j = mask | (std::uint64_t{1} << j);
    const double scale = partial_value(abs_product, with_j);
    const double limit = radius * (1.0 + kPruneSlack);
    std::int64_t k_max = 0;
    while (scale * static_cast<double>(k_max + 1) < limit) ++k_max;
    for (std::int64_t k = -k_max; k <= k_max; ++k) {
      current[j] = k;
      if (k == 0)
        descend(j + 1, abs_product, mask);
      else
        descend(j + 1, abs_product * static_cast<double>(std::abs(k)), with_j);
    }
    current[j] = 0;
  }
};

void require_alpha(double alpha) {
  if (!(alpha > 0.5)) throw std::invalid_argument("alpha must exceed 1/2");
}

void require_lambda(double alpha, double lambda) {
  if (!(lambda > 1.0 / (2.0 * alpha)))
    throw std::invalid_argument("lambda must exceed 1/(2 alpha)");
}

// sum_{u != {}} gamma_u^2 c^{|u|}
double nonempty_subset_sum(const Weights& weights, double c) {
  if (weights.form() == Weights::Form::product) {
    double log_sum = 0.0;
    for (double g : weights.product_factors()) log_sum += std::log1p(g * g * c);
    return std::expm1(log_sum);
  }
  const std::uint64_t count = std::uint64_t{1} << weights.dimension();
  double sum = 0.0;
  for (std::uint64_t u = 1; u < count; ++u) {
    const double g = weights.weight(u);
    sum += g * g * std::pow(c, std::popcount(u));
  }
  return sum;
}

}  // namespace

IndexSet enumerate_unweighted(std::size_t dimension, double radius) {
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  if (!(radius > 1.0)) return IndexSet(dimension);
  UnweightedWalker walker{dimension, radius, std::vector<std::int64_t>(dimension, 0), {}};
  walker.descend(0, 1.0);
  return IndexSet(dimension, std::move(walker.out));
}

IndexSet enumerate_weighted(double alpha, const Weights& weights, double radius) {
  require_alpha(alpha);
  const std::size_t d = weights.dimension();
  if (!(radius > 1.0)) return IndexSet(d);
  WeightedWalker walker{alpha, weights, radius, 1.0 / (2.0 * alpha),
                        std::vector<std::int64_t>(d, 0), {}};
  walker.descend(0, 1.0, 0);
  return IndexSet(d, std::move(walker.out));
}

std::uint64_t n_star_budget(std::uint64_t n) { return (n - 1) / 16; }

double compute_n_star(std::uint64_t n, double alpha, const Weights& weights) {
  if (!is_odd_prime(n)) throw std::invalid_argument("N must be an odd prime");
  require_alpha(alpha);
  const std::uint64_t m = n_star_budget(n);
  double radius = static_cast<double>(n) / 2.0;
  IndexSet pool = enumerate_weighted(alpha, weights, radius);
  while (pool.size() < m + 1) {
    radius *= 2.0;
    pool = enumerate_weighted(alpha, weights, radius);
  }
  std::vector<double> values;
  values.reserve(pool.size());
  for (const auto& h : pool) values.push_back(root_decay(h, alpha, weights));
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), values.end());
  return values[m];
}

double cardinality_bound(double alpha, double lambda, const Weights& weights, double radius) {
  require_alpha(alpha);
  require_lambda(alpha, lambda);
  if (radius < 0.0) throw std::invalid_argument("radius must be nonnegative");
  return t_constant(alpha, lambda, weights) * std::pow(radius, 2.0 * alpha * lambda);
}

double n_star_lower_bound(std::uint64_t n, double alpha, double lambda, const Weights& weights) {
  require_alpha(alpha);
  require_lambda(alpha, lambda);
  const double t = t_constant(alpha, lambda, weights);
  return std::pow((static_cast<double>(n) - 1.0) / (16.0 * t), 1.0 / (2.0 * alpha * lambda));
}

double r_sum_bound(std::uint64_t n, double alpha, double lambda, const Weights& weights,
                   double n_star) {
  SmoothnessParams{alpha, lambda}.validate();
  if (!(n_star > 0.0)) throw std::invalid_argument("N* must be positive");
  const double nd = static_cast<double>(n);
  const double t = t_constant(alpha, lambda, weights);
  const double first =
      32.0 / (2.0 - lambda) * t /
      ((nd - 1.0) * std::pow(n_star, 4.0 * alpha - 2.0 * alpha * lambda));
  const double c = std::pow(2.0, 1.0 + 4.0 * alpha) * riemann_zeta(4.0 * alpha);
  const double second = 16.0 / std::pow(nd, 4.0 * alpha) * nonempty_subset_sum(weights, c);
  return first + second;
}

double theorem_bound(std::uint64_t n, std::uint64_t replicates, double alpha, double lambda,
                     const Weights& weights, double korobov_norm_sq) {
  if (!is_odd_prime(n)) throw std::invalid_argument("N must be an odd prime");
  if (replicates == 0 || replicates % 2 == 0)
    throw std::invalid_argument("R must be an odd positive integer");
  SmoothnessParams{alpha, lambda}.validate();
  if (korobov_norm_sq < 0.0) throw std::invalid_argument("squared norm must be nonnegative");
  const double nd = static_cast<double>(n);
  const double n_star = compute_n_star(n, alpha, weights);
  const double r_sum = r_sum_bound(n, alpha, lambda, weights, n_star);
  const double prefactor = 32.0 * korobov_norm_sq * (2.0 * nd - 1.0) /
                           (std::pow(n_star, 2.0 * alpha) * (nd - 1.0));
  const double spread = std::sqrt(240.0 * std::pow(n_star, 4.0 * alpha) * r_sum);
  return prefactor *
         ((991.0 * nd - 255.0) / (120.0 * (2.0 * nd - 1.0)) + std::max(960.0, spread));
}

}  // namespace mla
