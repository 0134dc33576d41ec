#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mla/frequency.hpp"
#include "mla/korobov.hpp"
#include "mla/lattice.hpp"

namespace mla {

struct RunParams {
  std::uint64_t n = 0;           ///< lattice size, odd prime
  std::uint64_t replicates = 1;  ///< R, odd
  std::size_t dimension = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ExecutionOptions {
  unsigned threads = 1;  ///< 0 resolves through resolve_threads()
  TransformMethod transform = TransformMethod::automatic;
};

/// How step 2 ranks the candidates.
///
/// `median_of_squares` is the algorithm as analysed: the median over replicates
/// of |estimate|^2. `squared_median` ranks by |componentwise median|^2 instead;
/// it is an ablation only, offered because the first rule has an aliasing noise
/// floor that blurs the ranking of small coefficients.
enum class SelectionRule { median_of_squares, squared_median };

struct ApproximationResult {
  /// Selected index set K_N in rank order (largest median first).
  IndexSet frequencies{1};
  /// Median coefficient estimates, parallel to `frequencies`.
  std::vector<Complex> coefficients;
  RunParams params;
  /// The R lattice rules drawn, in replicate order.
  std::vector<LatticeConfig> replicate_configs;

  /// Estimated coefficient for h, zero when h is not selected.
  Complex coefficient(const Frequency& h) const;
};

/// Componentwise median of an odd number of complex values.
Complex complex_median(std::span<const Complex> values);

/// Smallest odd R with
///   R >= 2 max(log(3N/eps)/log(4/3),
///              (log(3N^2) - log(4 eps))/log 2 + d log(1 + 2 zeta(2))/log 2),
/// which bounds the failure probability of the median algorithm by eps.
std::uint64_t select_replicates(std::uint64_t n, std::size_t dimension, double epsilon);

/// Replicate r's generating vector (uniform on {1..N-1}^d) and shift
/// (uniform on [0,1)^d), drawn from stream r of the seeded generator.
LatticeConfig draw_replicate(std::uint64_t n, std::size_t dimension, std::uint64_t seed,
                             std::uint64_t replicate);

/// The universal median lattice algorithm. Needs no smoothness or weight
/// information: every candidate in A_d(N/2) is estimated on R random shifted
/// lattices, the N candidates with the largest median squared magnitude form
/// K_N (ties by ascending lexicographic order), and each selected coefficient
/// is the componentwise median of its R estimates. Uses exactly R N calls to f.
ApproximationResult universal_approximate(const Evaluator& f, const RunParams& params,
                                          const ExecutionOptions& options = {},
                                          SelectionRule rule = SelectionRule::median_of_squares);

/// Fixed-index-set comparator: K_N is the N candidates of A_d(N/2) with the
/// smallest root_decay(h, alpha, gamma) (ties lexicographic), chosen before
/// any sampling. Same replicates and coefficient medians as the universal run.
/// A simplified stand-in for smoothness-aware median lattice methods.
ApproximationResult baseline_approximate(const Evaluator& f, const RunParams& params,
                                         double alpha, const Weights& weights,
                                         const ExecutionOptions& options = {});

/// sum_{h in K_N} c(h) exp(2 pi i h . x).
Complex evaluate(const ApproximationResult& result, std::span<const double> x);

/// Text artifact: "N", "R", "d", "seed" header lines followed by one line per
/// selected frequency (components, real part, imaginary part) in rank order,
/// reals printed with 17 significant digits.
void write_result(std::ostream& os, const ApproximationResult& result);

}  // namespace mla
