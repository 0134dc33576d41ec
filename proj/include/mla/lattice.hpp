#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mla/frequency.hpp"

namespace mla {

using Complex = std::complex<double>;

/// f : [0,1)^d -> C. Must be reentrant; replicates call it concurrently.
using Evaluator = std::function<Complex(std::span<const double>)>;

bool is_odd_prime(std::uint64_t n);

/// Smallest odd prime >= n. Throws std::invalid_argument for n < 3.
std::uint64_t next_odd_prime(std::uint64_t n);

/// One randomly shifted rank-1 lattice rule: points {k z / N + delta}.
class LatticeConfig {
public:
  /// Throws std::invalid_argument unless N is an odd prime, 1 <= z_j <= N-1
  /// and 0 <= delta_j < 1 with z and delta of equal nonzero length.
  LatticeConfig(std::uint64_t n, std::vector<std::int64_t> z, std::vector<double> delta);

  std::uint64_t n() const { return n_; }
  std::size_t dimension() const { return z_.size(); }
  const std::vector<std::int64_t>& z() const { return z_; }
  const std::vector<double>& delta() const { return delta_; }

  /// (h . z) mod N in [0, N), computed exactly.
  std::uint64_t bucket(const Frequency& h) const;

private:
  std::uint64_t n_;
  std::vector<std::int64_t> z_;
  std::vector<double> delta_;
};

/// Function values on one shifted lattice; values[k] = f({k z / N + delta}).
struct SampleVector {
  std::vector<Complex> values;
};

/// The unshifted points; component j of point k is (k z_j mod N) / N.
std::vector<std::vector<double>> lattice_points(std::uint64_t n, std::span<const std::int64_t> z);

/// Evaluates f at the N shifted lattice points (exactly N calls).
SampleVector sample(const Evaluator& f, const LatticeConfig& config);

/// Direct O(N d) evaluation of
///   (1/N) sum_k f(x_k) exp(-2 pi i h . (k z / N + delta)).
Complex estimate_coefficient(const SampleVector& samples, const LatticeConfig& config,
                             const Frequency& h);

enum class TransformMethod { automatic, direct, fft };

/// c_t = (1/N) sum_k values[k] exp(-2 pi i k t / N), t = 0..N-1.
/// `automatic` picks the direct table-driven DFT for N <= 512 and the
/// FFTW (which handles prime lengths) otherwise.
std::vector<Complex> lattice_transform(std::span<const Complex> values,
                                       TransformMethod method = TransformMethod::automatic);

/// Lattice coefficient estimates for every target, in target order.
///
/// A rank-1 lattice only sees h through (h . z) mod N, so one length-N
/// transform c serves all targets: estimate(h) = c[(h . z) mod N] exp(-2 pi i h . delta).
std::vector<Complex> estimate_all(const SampleVector& samples, const LatticeConfig& config,
                                  const IndexSet& targets,
                                  TransformMethod method = TransformMethod::automatic);

/// True iff sum_j z_j l_j == 0 (mod N), i.e. l lies in the dual lattice.
bool dual_contains(std::span<const std::int64_t> z, std::uint64_t n, const Frequency& ell);

}  // namespace mla
