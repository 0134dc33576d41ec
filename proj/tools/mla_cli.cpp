// Command-line driver: single approximation runs, convergence and truncation
// sweeps (CSV), and evaluation of the diagnostic error bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mla/experiment.hpp"
#include "mla/index_sets.hpp"
#include "mla/lattice.hpp"
#include "mla/median_algorithm.hpp"
#include "mla/test_functions.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApproximateArgs {
  std::string fn;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> r;
  double eps = 0.01;
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::string out;
  std::string dump_index_set;
  unsigned threads = 0;
  mla::SelectionRule rank = mla::SelectionRule::median_of_squares;
};

struct SweepArgs {
  mla::SweepConfig config;
  std::string out;
};

struct BoundArgs {
  double alpha = 0.0;
  double lambda = 0.0;
  std::string weights;
  std::size_t d = 0;
  std::uint64_t n = 0;
  double normsq = 0.0;
  double eps = 0.01;
};

const std::map<std::string, mla::SelectionRule> kRankRules{
    {"median-of-squares", mla::SelectionRule::median_of_squares},
    {"squared-median", mla::SelectionRule::squared_median}};

void add_rank_option(CLI::App& cmd, mla::SelectionRule& rule) {
  cmd.add_option("--rank", rule,
                 "candidate ranking: median-of-squares (default) or squared-median (ablation)")
      ->transform(CLI::CheckedTransformer(kRankRules, CLI::ignore_case));
}

void add_sweep_options(CLI::App& cmd, SweepArgs& args) {
  auto& c = args.config;
  c.n_values.clear();
  cmd.add_option("--fn", c.function, "test function: f1 or f2")->required();
  cmd.add_option("--d", c.dimension, "dimension")->capture_default_str();
  cmd.add_option("--N", c.n_values, "target lattice sizes, snapped up to odd primes")
      ->required()
      ->delimiter(',');
  cmd.add_option("--eps", c.epsilon, "failure probability used to select R")->capture_default_str();
  cmd.add_option("--seeds", c.seeds, "master seeds")->delimiter(',')->capture_default_str();
  cmd.add_option("--R", c.replicates, "override the replicate count (odd)");
  cmd.add_option("--threads", c.threads, "worker threads (0: $MLA_THREADS or all cores)");
  cmd.add_option("--out", args.out, "CSV output path")->required();
  add_rank_option(cmd, c.selection);
}

int run_approximate(const ApproximateArgs& a) {
  if (!mla::is_odd_prime(a.n)) throw UsageError("--N must be an odd prime");
  if (a.r && (*a.r == 0 || *a.r % 2 == 0)) throw UsageError("--R must be odd and positive");
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw UsageError("--eps must lie in (0,1)");
  if (a.d == 0) throw UsageError("--d must be positive");
  mla::TestFunction fn;
  try {
    fn = mla::test_function_by_name(a.fn, a.d);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const std::uint64_t r = a.r ? *a.r : mla::select_replicates(a.n, a.d, a.eps);
  const mla::RunParams params{a.n, r, a.d, a.seed};
  const auto result =
      mla::universal_approximate(fn.evaluator(), params, mla::ExecutionOptions{a.threads}, a.rank);
  mla::write_file_atomically(a.out, [&](std::ostream& os) { mla::write_result(os, result); });
  if (!a.dump_index_set.empty())
    mla::write_file_atomically(a.dump_index_set,
                               [&](std::ostream& os) { result.frequencies.write_text(os); });
  std::printf("N=%llu R=%llu M=%llu l2_error=%.17g trunc_error=%.17g\n",
              static_cast<unsigned long long>(a.n), static_cast<unsigned long long>(r),
              static_cast<unsigned long long>(a.n * r), mla::exact_l2_error(result, fn),
              mla::truncation_error(result.frequencies, fn));
  return 0;
}

void check_sweep(const SweepArgs& a) {
  try {
    a.config.validate();
    (void)mla::test_function_by_name(a.config.function, a.config.dimension);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run_converge(const SweepArgs& a) {
  check_sweep(a);
  const auto rows = mla::run_converge(a.config);
  mla::write_file_atomically(a.out, [&](std::ostream& os) { mla::write_converge_csv(os, rows); });
  return 0;
}

int run_truncation(const SweepArgs& a) {
  check_sweep(a);
  const auto rows = mla::run_truncation(a.config);
  mla::write_file_atomically(a.out,
                             [&](std::ostream& os) { mla::write_truncation_csv(os, rows); });
  return 0;
}

int run_bound(const BoundArgs& a) {
  if (!mla::is_odd_prime(a.n)) throw UsageError("--N must be an odd prime");
  if (a.normsq < 0.0) throw UsageError("--normsq must be nonnegative");
  std::optional<mla::Weights> weights;
  try {
    mla::SmoothnessParams{a.alpha, a.lambda}.validate();
    weights = mla::parse_weights(a.weights, a.d);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto report = mla::compute_bound_report(a.n, a.alpha, a.lambda, *weights, a.normsq, a.eps);
  std::printf("N_star %.17g\n", report.n_star);
  std::printf("N_star_lower_bound %.17g\n", report.n_star_lower);
  std::printf("r_sum_bound %.17g\n", report.r_sum);
  std::printf("theorem_bound %.17g\n", report.bound);
  std::printf("R %llu\n", static_cast<unsigned long long>(report.replicates));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal median lattice-based L2 approximation"};
  app.require_subcommand(1);

  ApproximateArgs approx;
  auto* approximate = app.add_subcommand("approximate", "run the universal algorithm once");
  approximate->add_option("--fn", approx.fn, "test function: f1 or f2")->required();
  approximate->add_option("--N", approx.n, "lattice size (odd prime, not snapped)")->required();
  auto* r_opt = approximate->add_option("--R", approx.r, "replicate count (odd)");
  auto* eps_opt = approximate->add_option("--eps", approx.eps, "failure probability for R");
  r_opt->excludes(eps_opt);
  approximate->add_option("--d", approx.d, "dimension")->capture_default_str();
  approximate->add_option("--seed", approx.seed, "master seed")->capture_default_str();
  approximate->add_option("--out", approx.out, "result artifact path")->required();
  approximate->add_option("--dump-index-set", approx.dump_index_set, "write K_N, one per line");
  approximate->add_option("--threads", approx.threads, "worker threads");
  add_rank_option(*approximate, approx.rank);

  SweepArgs converge_args;
  auto* converge = app.add_subcommand("converge", "L2 error sweep over N and seeds (CSV)");
  add_sweep_options(*converge, converge_args);

  SweepArgs truncation_args;
  auto* truncation = app.add_subcommand("truncation", "K_N vs oracle truncation error (CSV)");
  add_sweep_options(*truncation, truncation_args);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "evaluate N*, r_sum bound and error bound");
  bound->add_option("--alpha", bound_args.alpha, "smoothness alpha > 1/2")->required();
  bound->add_option("--lambda", bound_args.lambda, "lambda in (1/(2 alpha), 2)")->required();
  bound->add_option("--weights", bound_args.weights, "product:g1,..,gd or uniform:g")->required();
  bound->add_option("--d", bound_args.d, "dimension (needed for uniform weights)");
  bound->add_option("--N", bound_args.n, "lattice size (odd prime)")->required();
  bound->add_option("--normsq", bound_args.normsq, "squared Korobov norm")->required();
  bound->add_option("--eps", bound_args.eps, "failure probability for R")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*approximate) return run_approximate(approx);
    if (*converge) return run_converge(converge_args);
    if (*truncation) return run_truncation(truncation_args);
    if (*bound) return run_bound(bound_args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
