#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mla/korobov.hpp"
#include "mla/median_algorithm.hpp"

namespace mla {

struct SweepConfig {
  std::string function = "f1";
  std::size_t dimension = 2;
  std::vector<std::uint64_t> n_values;  ///< snapped upward to odd primes
  double epsilon = 0.01;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::optional<std::uint64_t> replicates;  ///< overrides select_replicates
  unsigned threads = 0;
  /// Ranking rule of the universal runs; the CSV algo label becomes
  /// "universal-sqmed" for the squared_median ablation.
  SelectionRule selection = SelectionRule::median_of_squares;

  void validate() const;
};

/// Each value replaced by the smallest odd prime >= it (values < 3 become 3).
std::vector<std::uint64_t> snap_to_primes(const std::vector<std::uint64_t>& values);

struct ConvergeRow {
  std::string algo;  ///< "baseline" or "universal"
  std::string fn;
  std::size_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t r = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  double l2_error = 0.0;
  double trunc_error = 0.0;
  double oracle_trunc_error = 0.0;
  double wall_ms = 0.0;
};

struct TruncationRow {
  std::string fn;
  std::size_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  double trunc_kn = 0.0;
  double trunc_oracle = 0.0;
  double ratio = 0.0;
};

inline constexpr const char* kConvergeHeader =
    "algo,fn,d,N,R,M,seed,l2_error,trunc_error,oracle_trunc_error,wall_ms";
inline constexpr const char* kTruncationHeader = "fn,d,N,M,seed,trunc_KN,trunc_oracle,ratio";

/// Universal and baseline runs for every (N, seed); rows sorted by (algo, N, seed).
/// The baseline uses unit weights and the function's nominal smoothness.
std::vector<ConvergeRow> run_converge(const SweepConfig& config);

/// Truncation error of the universal K_N against the oracle set; rows sorted by (N, seed).
std::vector<TruncationRow> run_truncation(const SweepConfig& config);

void write_converge_csv(std::ostream& os, const std::vector<ConvergeRow>& rows);
void write_truncation_csv(std::ostream& os, const std::vector<TruncationRow>& rows);

/// Writes via a sibling temporary file and renames it into place; nothing is
/// left at `path` if `writer` throws.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

struct BoundReport {
  double n_star = 0.0;
  double n_star_lower = 0.0;
  double r_sum = 0.0;
  double bound = 0.0;  ///< squared L2 error bound
  std::uint64_t replicates = 0;
};

BoundReport compute_bound_report(std::uint64_t n, double alpha, double lambda,
                                 const Weights& weights, double korobov_norm_sq, double epsilon);

}  // namespace mla
