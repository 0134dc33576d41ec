#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "mla/frequency.hpp"

namespace mla {

/// Downward-closed weight collection (gamma_u) over subsets u of {1..d}.
///
/// Two forms are supported. Product weights gamma_u = prod_{j in u} gamma_j,
/// and explicit weights listed per subset. Subsets are encoded as bitmasks
/// (bit j set <=> coordinate j+1 in u), so d <= 63. gamma_{} is always 1.
/// Every weight lies in (0, 1].
class Weights {
public:
  enum class Form { product, explicit_subsets };

  static Weights product(std::vector<double> per_coordinate);
  static Weights uniform(std::size_t dimension, double value);
  /// Listed subsets only; querying an unlisted nonempty subset throws.
  /// Throws std::invalid_argument unless the listed values are in (0,1] and
  /// gamma_v <= gamma_w for every listed pair w subset of v.
  static Weights explicit_subsets(std::size_t dimension,
                                  std::map<std::uint64_t, double> subset_weights);

  std::size_t dimension() const { return dimension_; }
  Form form() const { return form_; }
  const std::vector<double>& product_factors() const { return factors_; }

  double weight(std::uint64_t subset_mask) const;

private:
  Weights(Form form, std::size_t dimension) : form_(form), dimension_(dimension) {}

  Form form_;
  std::size_t dimension_;
  std::vector<double> factors_;
  std::map<std::uint64_t, double> subsets_;
};

/// Parses "product:g1,g2,..." or "uniform:g". For the uniform form the
/// dimension argument fixes d; for the product form it must match the list
/// length unless it is 0.
Weights parse_weights(std::string_view text, std::size_t dimension);

struct SmoothnessParams {
  double alpha;
  double lambda;

  /// Checks alpha > 1/2 and 1/(2 alpha) < lambda < 2.
  void validate() const;
};

/// r_{2 alpha, gamma}(h) = gamma_{supp h}^{-1} prod_{j in supp h} |h_j|^{2 alpha}.
double decay(const Frequency& h, double alpha, const Weights& weights);

/// decay(h)^{1/(2 alpha)}, evaluated as a product of per-coordinate factors.
double root_decay(const Frequency& h, double alpha, const Weights& weights);

/// Riemann zeta for real s > 1 via Euler-Maclaurin summation.
double riemann_zeta(double s);

/// T_{alpha,lambda}(gamma) = sum_u gamma_u^lambda (2 zeta(2 alpha lambda))^{|u|}.
double t_constant(double alpha, double lambda, const Weights& weights);

using CoefficientMap = std::vector<std::pair<Frequency, std::complex<double>>>;

/// sum_h |c(h)|^2 r_{2 alpha, gamma}(h).
double korobov_norm_sq(const CoefficientMap& coefficients, double alpha,
                       const Weights& weights);

}  // namespace mla
