#include "mla/median_algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "mla/index_sets.hpp"
#include "mla/parallel.hpp"
#include "mla/rng.hpp"

namespace mla {

namespace {

double median_of(std::vector<double>& values) {
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

// Coefficient table: row r holds replicate r's estimates for every target.
using EstimateTable = std::vector<std::vector<Complex>>;

struct Replicates {
  std::vector<LatticeConfig> configs;
  EstimateTable table;
};

Replicates run_replicates(const Evaluator& f, const RunParams& params, const IndexSet& targets,
                          const ExecutionOptions& options) {
  Replicates out;
  out.configs.reserve(params.replicates);
  for (std::uint64_t r = 0; r < params.replicates; ++r)
    out.configs.push_back(draw_replicate(params.n, params.dimension, params.seed, r));
  out.table.resize(params.replicates);
  parallel_for(params.replicates, resolve_threads(options.threads), [&](std::size_t r) {
    const auto samples = sample(f, out.configs[r]);
    out.table[r] = estimate_all(samples, out.configs[r], targets, options.transform);
  });
  return out;
}

std::vector<Complex> median_coefficients(const EstimateTable& table,
                                         std::span<const std::size_t> columns) {
  std::vector<Complex> column(table.size());
  std::vector<Complex> out;
  out.reserve(columns.size());
  for (auto i : columns) {
    for (std::size_t r = 0; r < table.size(); ++r) column[r] = table[r][i];
    out.push_back(complex_median(column));
  }
  return out;
}

ApproximationResult assemble(const RunParams& params, const IndexSet& pool,
                             std::span<const std::size_t> selected, Replicates&& reps) {
  std::vector<Frequency> chosen;
  chosen.reserve(selected.size());
  for (auto i : selected) chosen.push_back(pool[i]);
  ApproximationResult result;
  result.frequencies = IndexSet(params.dimension, std::move(chosen));
  result.coefficients = median_coefficients(reps.table, selected);
  result.params = params;
  result.replicate_configs = std::move(reps.configs);
  return result;
}

}  // namespace

void RunParams::validate() const {
  if (!is_odd_prime(n)) throw std::invalid_argument("N must be an odd prime");
  if (replicates == 0 || replicates % 2 == 0)
    throw std::invalid_argument("R must be an odd positive integer");
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
}

Complex ApproximationResult::coefficient(const Frequency& h) const {
  for (std::size_t i = 0; i < frequencies.size(); ++i)
    if (frequencies[i] == h) return coefficients[i];
  return 0.0;
}

Complex complex_median(std::span<const Complex> values) {
  if (values.empty() || values.size() % 2 == 0)
    throw std::invalid_argument("complex_median needs an odd number of values");
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  return {median_of(re), median_of(im)};
}

std::uint64_t select_replicates(std::uint64_t n, std::size_t dimension, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("failure probability must lie in (0,1)");
  const double nd = static_cast<double>(n);
  const double ln2 = std::numbers::ln2;
  const double shift_branch = std::log(3.0 * nd / epsilon) / std::log(4.0 / 3.0);
  const double pool_branch = (std::log(3.0 * nd * nd) - std::log(4.0 * epsilon)) / ln2 +
                             std::log(1.0 + 2.0 * riemann_zeta(2.0)) / ln2 *
                                 static_cast<double>(dimension);
  const double rhs = 2.0 * std::max(shift_branch, pool_branch);
  auto r = static_cast<std::uint64_t>(std::ceil(rhs));
  if (r < 1) r = 1;
  if (r % 2 == 0) ++r;
  return r;
}

LatticeConfig draw_replicate(std::uint64_t n, std::size_t dimension, std::uint64_t seed,
                             std::uint64_t replicate) {
  CounterRng rng(seed, replicate);
  std::vector<std::int64_t> z(dimension);
  std::vector<double> delta(dimension);
  for (auto& zj : z) zj = static_cast<std::int64_t>(1 + rng.below(n - 1));
  for (auto& dj : delta) dj = rng.unit();
  return LatticeConfig(n, std::move(z), std::move(delta));
}

ApproximationResult universal_approximate(const Evaluator& f, const RunParams& params,
                                          const ExecutionOptions& options, SelectionRule rule) {
  params.validate();
  const IndexSet pool = enumerate_unweighted(params.dimension, static_cast<double>(params.n) / 2.0);
  auto reps = run_replicates(f, params, pool, options);

  std::vector<double> median_power(pool.size());
  if (rule == SelectionRule::median_of_squares) {
    std::vector<double> column(params.replicates);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t r = 0; r < params.replicates; ++r) column[r] = std::norm(reps.table[r][i]);
      median_power[i] = median_of(column);
    }
  } else {
    std::vector<std::size_t> all(pool.size());
    std::iota(all.begin(), all.end(), 0);
    const auto medians = median_coefficients(reps.table, all);
    for (std::size_t i = 0; i < pool.size(); ++i) median_power[i] = std::norm(medians[i]);
  }

  // pool is lexicographic, so index order breaks ties
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  const auto keep = static_cast<std::ptrdiff_t>(params.n);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (median_power[a] != median_power[b])
                        return median_power[a] > median_power[b];
                      return a < b;
                    });
  order.resize(params.n);
  return assemble(params, pool, order, std::move(reps));
}

ApproximationResult baseline_approximate(const Evaluator& f, const RunParams& params,
                                         double alpha, const Weights& weights,
                                         const ExecutionOptions& options) {
  params.validate();
  if (weights.dimension() != params.dimension)
    throw std::invalid_argument("weights dimension mismatch");
  const IndexSet pool = enumerate_unweighted(params.dimension, static_cast<double>(params.n) / 2.0);
  std::vector<double> rank(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) rank[i] = root_decay(pool[i], alpha, weights);
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  const auto keep = static_cast<std::ptrdiff_t>(params.n);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (rank[a] != rank[b]) return rank[a] < rank[b];
                      return a < b;
                    });
  order.resize(params.n);

  std::vector<Frequency> fixed;
  fixed.reserve(order.size());
  for (auto i : order) fixed.push_back(pool[i]);
  const IndexSet targets(params.dimension, std::move(fixed));
  auto reps = run_replicates(f, params, targets, options);
  std::vector<std::size_t> all(targets.size());
  std::iota(all.begin(), all.end(), 0);
  return assemble(params, targets, all, std::move(reps));
}

Complex evaluate(const ApproximationResult& result, std::span<const double> x) {
  if (x.size() != result.frequencies.dimension())
    throw std::invalid_argument("evaluation point dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < result.frequencies.size(); ++i) {
    const auto& h = result.frequencies[i];
    double phase = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) phase += static_cast<double>(h[j]) * x[j];
    sum += result.coefficients[i] * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  return sum;
}

void write_result(std::ostream& os, const ApproximationResult& result) {
  const auto& p = result.params;
  os << "N " << p.n << '\n'
     << "R " << p.replicates << '\n'
     << "d " << p.dimension << '\n'
     << "seed " << p.seed << '\n';
  char buffer[64];
  for (std::size_t i = 0; i < result.frequencies.size(); ++i) {
    const auto& h = result.frequencies[i];
    for (std::size_t j = 0; j < h.dimension(); ++j) os << h[j] << ' ';
    std::snprintf(buffer, sizeof buffer, "%.17g", result.coefficients[i].real());
    os << buffer << ' ';
    std::snprintf(buffer, sizeof buffer, "%.17g", result.coefficients[i].imag());
    os << buffer << '\n';
  }
}

}  // namespace mla
