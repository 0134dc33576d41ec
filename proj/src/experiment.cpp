#include "mla/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "mla/index_sets.hpp"
#include "mla/lattice.hpp"
#include "mla/median_algorithm.hpp"
#include "mla/parallel.hpp"
#include "mla/test_functions.hpp"

namespace mla {

namespace {

std::string fmt17(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

struct Cell {
  std::uint64_t n;
  std::uint64_t seed;
  bool universal;
};

std::uint64_t replicates_for(const SweepConfig& config, std::uint64_t n) {
  return config.replicates ? *config.replicates
                           : select_replicates(n, config.dimension, config.epsilon);
}

const char* universal_label(SelectionRule rule) {
  return rule == SelectionRule::median_of_squares ? "universal" : "universal-sqmed";
}

}  // namespace

void SweepConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("sweep needs at least one N");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
  if (dimension == 0) throw std::invalid_argument("dimension must be positive");
  if (replicates && (*replicates == 0 || *replicates % 2 == 0))
    throw std::invalid_argument("R must be an odd positive integer");
}

std::vector<std::uint64_t> snap_to_primes(const std::vector<std::uint64_t>& values) {
  std::vector<std::uint64_t> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back(next_odd_prime(std::max<std::uint64_t>(v, 3)));
  return out;
}

std::vector<ConvergeRow> run_converge(const SweepConfig& config) {
  config.validate();
  const auto fn = test_function_by_name(config.function, config.dimension);
  const auto f = fn.evaluator();
  const auto primes = snap_to_primes(config.n_values);
  const auto unit = Weights::uniform(config.dimension, 1.0);

  std::vector<Cell> cells;
  for (auto n : primes)
    for (auto seed : config.seeds)
      for (bool universal : {false, true}) cells.push_back({n, seed, universal});

  std::vector<double> oracle(primes.size());
  parallel_for(primes.size(), resolve_threads(config.threads), [&](std::size_t i) {
    oracle[i] = truncation_error(oracle_index_set(fn, primes[i]), fn);
  });
  auto oracle_for = [&](std::uint64_t n) {
    return oracle[static_cast<std::size_t>(std::find(primes.begin(), primes.end(), n) -
                                           primes.begin())];
  };

  std::vector<ConvergeRow> rows(cells.size());
  parallel_for(cells.size(), resolve_threads(config.threads), [&](std::size_t i) {
    const Cell& cell = cells[i];
    const RunParams params{cell.n, replicates_for(config, cell.n), config.dimension, cell.seed};
    const ExecutionOptions serial{1, TransformMethod::automatic};
    const auto start = std::chrono::steady_clock::now();
    const auto result = cell.universal
                            ? universal_approximate(f, params, serial, config.selection)
                            : baseline_approximate(f, params, fn.nominal_alpha, unit, serial);
    const auto stop = std::chrono::steady_clock::now();
    ConvergeRow& row = rows[i];
    row.algo = cell.universal ? universal_label(config.selection) : "baseline";
    row.fn = fn.name;
    row.d = config.dimension;
    row.n = cell.n;
    row.r = params.replicates;
    row.m = params.n * params.replicates;
    row.seed = cell.seed;
    row.l2_error = exact_l2_error(result, fn);
    row.trunc_error = truncation_error(result.frequencies, fn);
    row.oracle_trunc_error = oracle_for(cell.n);
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  });
  std::stable_sort(rows.begin(), rows.end(), [](const ConvergeRow& a, const ConvergeRow& b) {
    return std::tie(a.algo, a.n, a.seed) < std::tie(b.algo, b.n, b.seed);
  });
  return rows;
}

std::vector<TruncationRow> run_truncation(const SweepConfig& config) {
  config.validate();
  const auto fn = test_function_by_name(config.function, config.dimension);
  const auto f = fn.evaluator();
  const auto primes = snap_to_primes(config.n_values);

  std::vector<double> oracle(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i)
    oracle[i] = truncation_error(oracle_index_set(fn, primes[i]), fn);

  std::vector<std::pair<std::size_t, std::uint64_t>> cells;
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (auto seed : config.seeds) cells.emplace_back(i, seed);

  std::vector<TruncationRow> rows(cells.size());
  parallel_for(cells.size(), resolve_threads(config.threads), [&](std::size_t c) {
    const auto [i, seed] = cells[c];
    const RunParams params{primes[i], replicates_for(config, primes[i]), config.dimension, seed};
    const auto result = universal_approximate(f, params, ExecutionOptions{1}, config.selection);
    TruncationRow& row = rows[c];
    row.fn = fn.name;
    row.d = config.dimension;
    row.n = params.n;
    row.m = params.n * params.replicates;
    row.seed = seed;
    row.trunc_kn = truncation_error(result.frequencies, fn);
    row.trunc_oracle = oracle[i];
    if (row.trunc_oracle > 0.0)
      row.ratio = row.trunc_kn / row.trunc_oracle;
    else
      row.ratio = row.trunc_kn == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  });
  std::stable_sort(rows.begin(), rows.end(), [](const TruncationRow& a, const TruncationRow& b) {
    return std::tie(a.n, a.seed) < std::tie(b.n, b.seed);
  });
  return rows;
}

void write_converge_csv(std::ostream& os, const std::vector<ConvergeRow>& rows) {
  os << kConvergeHeader << '\n';
  for (const auto& r : rows) {
    char wall[64];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    os << r.algo << ',' << r.fn << ',' << r.d << ',' << r.n << ',' << r.r << ',' << r.m << ','
       << r.seed << ',' << fmt17(r.l2_error) << ',' << fmt17(r.trunc_error) << ','
       << fmt17(r.oracle_trunc_error) << ',' << wall << '\n';
  }
}

void write_truncation_csv(std::ostream& os, const std::vector<TruncationRow>& rows) {
  os << kTruncationHeader << '\n';
  for (const auto& r : rows)
    os << r.fn << ',' << r.d << ',' << r.n << ',' << r.m << ',' << r.seed << ','
       << fmt17(r.trunc_kn) << ',' << fmt17(r.trunc_oracle) << ',' << fmt17(r.ratio) << '\n';
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".partial";
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      writer(out);
      out.flush();
      if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    std::filesystem::remove(path, ignored);
    throw;
  }
}

BoundReport compute_bound_report(std::uint64_t n, double alpha, double lambda,
                                 const Weights& weights, double korobov_norm_sq, double epsilon) {
  SmoothnessParams{alpha, lambda}.validate();
  BoundReport report;
  report.replicates = select_replicates(n, weights.dimension(), epsilon);
  report.n_star = compute_n_star(n, alpha, weights);
  report.n_star_lower = n_star_lower_bound(n, alpha, lambda, weights);
  report.r_sum = r_sum_bound(n, alpha, lambda, weights, report.n_star);
  report.bound = theorem_bound(n, report.replicates, alpha, lambda, weights, korobov_norm_sq);
  return report;
}

}  // namespace mla
