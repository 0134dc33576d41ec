#include "mla/lattice.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

namespace mla {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mod_nonnegative(__int128 value, std::uint64_t n) {
  auto r = value % static_cast<__int128>(n);
  if (r < 0) r += n;
  return static_cast<std::uint64_t>(r);
}

__int128 dot(std::span<const std::int64_t> z, std::span<const std::int64_t> h) {
  __int128 s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) s += static_cast<__int128>(z[j]) * h[j];
  return s;
}

std::vector<Complex> direct_dft(std::span<const Complex> x) {
  const std::size_t n = x.size();
  std::vector<Complex> roots(n);
  for (std::size_t j = 0; j < n; ++j)
    roots[j] = std::polar(1.0, -kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  std::vector<Complex> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += x[k] * roots[idx];
      idx += t;
      if (idx >= n) idx -= n;
    }
    out[t] = acc;
  }
  return out;
}

// FFTW planning is not thread-safe; execution with a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> fftw_dft(std::span<const Complex> x) {
  const int n = static_cast<int>(x.size());
  std::vector<Complex> in(x.begin(), x.end()), out(x.size());
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
  return out;
}

}  // namespace

bool is_odd_prime(std::uint64_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint64_t p = 3; p <= n / p; p += 2)
    if (n % p == 0) return false;
  return true;
}

std::uint64_t next_odd_prime(std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("next_odd_prime requires n >= 3");
  while (!is_odd_prime(n)) ++n;
  return n;
}

LatticeConfig::LatticeConfig(std::uint64_t n, std::vector<std::int64_t> z,
                             std::vector<double> delta)
    : n_(n), z_(std::move(z)), delta_(std::move(delta)) {
  if (!is_odd_prime(n_))
    throw std::invalid_argument("lattice size " + std::to_string(n_) + " is not an odd prime");
  if (z_.empty() || z_.size() != delta_.size())
    throw std::invalid_argument("generating vector and shift must share a positive dimension");
  for (auto zj : z_)
    if (zj < 1 || static_cast<std::uint64_t>(zj) > n_ - 1)
      throw std::invalid_argument("generating vector entries must lie in {1..N-1}");
  for (double dj : delta_)
    if (!(dj >= 0.0 && dj < 1.0)) throw std::invalid_argument("shift entries must lie in [0,1)");
}

std::uint64_t LatticeConfig::bucket(const Frequency& h) const {
  if (h.dimension() != dimension()) throw std::invalid_argument("frequency dimension mismatch");
  return mod_nonnegative(dot(z_, h.components()), n_);
}

std::vector<std::vector<double>> lattice_points(std::uint64_t n,
                                                std::span<const std::int64_t> z) {
  std::vector<std::vector<double>> points(n, std::vector<double>(z.size()));
  const double nd = static_cast<double>(n);
  for (std::uint64_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < z.size(); ++j)
      points[k][j] = static_cast<double>(mod_nonnegative(static_cast<__int128>(k) * z[j], n)) / nd;
  return points;
}

SampleVector sample(const Evaluator& f, const LatticeConfig& config) {
  const std::uint64_t n = config.n();
  const std::size_t d = config.dimension();
  const double nd = static_cast<double>(n);
  SampleVector out;
  out.values.resize(n);
  std::vector<double> x(d);
  for (std::uint64_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto kz = mod_nonnegative(static_cast<__int128>(k) * config.z()[j], n);
      double xj = static_cast<double>(kz) / nd + config.delta()[j];
      if (xj >= 1.0) xj -= 1.0;
      x[j] = xj;
    }
    out.values[k] = f(x);
  }
  return out;
}

Complex estimate_coefficient(const SampleVector& samples, const LatticeConfig& config,
                             const Frequency& h) {
  const std::uint64_t n = config.n();
  const std::size_t d = config.dimension();
  if (h.dimension() != d) throw std::invalid_argument("frequency dimension mismatch");
  if (samples.values.size() != n) throw std::invalid_argument("sample vector length must be N");
  const double nd = static_cast<double>(n);
  Complex acc = 0.0;
  for (std::uint64_t k = 0; k < n; ++k) {
    double phase = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const auto kz = mod_nonnegative(static_cast<__int128>(k) * config.z()[j], n);
      double xj = static_cast<double>(kz) / nd + config.delta()[j];
      if (xj >= 1.0) xj -= 1.0;
      phase += static_cast<double>(h[j]) * xj;
    }
    acc += samples.values[k] * std::polar(1.0, -kTwoPi * phase);
  }
  return acc / nd;
}

std::vector<Complex> lattice_transform(std::span<const Complex> values, TransformMethod method) {
  const std::size_t n = values.size();
  if (n == 0) return {};
  if (method == TransformMethod::automatic)
    method = n <= 512 ? TransformMethod::direct : TransformMethod::fft;
  auto out = method == TransformMethod::direct ? direct_dft(values) : fftw_dft(values);
  for (auto& c : out) c /= static_cast<double>(n);
  return out;
}

std::vector<Complex> estimate_all(const SampleVector& samples, const LatticeConfig& config,
                                  const IndexSet& targets, TransformMethod method) {
  if (targets.dimension() != config.dimension())
    throw std::invalid_argument("target dimension mismatch");
  if (samples.values.size() != config.n())
    throw std::invalid_argument("sample vector length must be N");
  const auto buckets = lattice_transform(samples.values, method);
  std::vector<Complex> out;
  out.reserve(targets.size());
  for (const auto& h : targets) {
    // h . delta reduced mod 1 per coordinate keeps the phase argument small
    double phase = 0.0;
    for (std::size_t j = 0; j < h.dimension(); ++j) {
      const double p = static_cast<double>(h[j]) * config.delta()[j];
      phase += p - std::floor(p);
    }
    out.push_back(buckets[config.bucket(h)] * std::polar(1.0, -kTwoPi * phase));
  }
  return out;
}

bool dual_contains(std::span<const std::int64_t> z, std::uint64_t n, const Frequency& ell) {
  if (ell.dimension() != z.size()) throw std::invalid_argument("frequency dimension mismatch");
  return mod_nonnegative(dot(z, ell.components()), n) == 0;
}

}  // namespace mla
