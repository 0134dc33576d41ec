#pragma once

#include <cstdint>

#include "mla/frequency.hpp"
#include "mla/korobov.hpp"

namespace mla {

/// A_d(L) = {h : prod_{j in supp h} |h_j| < L}, lexicographic order.
IndexSet enumerate_unweighted(std::size_t dimension, double radius);

/// A_{d,alpha,gamma}(L) = {h : root_decay(h, alpha, gamma) < L}, lexicographic order.
///
/// Coordinates are fixed one at a time. Under downward-closed weights every
/// additional nonzero coordinate can only increase root_decay, so a branch is
/// cut as soon as its partial value reaches L.
IndexSet enumerate_weighted(double alpha, const Weights& weights, double radius);

/// floor((N - 1) / 16): the cardinality budget that defines N*.
std::uint64_t n_star_budget(std::uint64_t n);

/// N* = sup{L >= 0 : |A_{d,alpha,gamma}(L)| <= (N-1)/16}.
///
/// Returned as the (m+1)-th smallest root_decay value over Z^d (with
/// multiplicity), m = n_star_budget(N). The search radius starts at N/2 and is
/// doubled until at least m+1 frequencies are available, so small weights
/// (where N* may exceed N/2) are handled too.
double compute_n_star(std::uint64_t n, double alpha, const Weights& weights);

/// T_{alpha,lambda}(gamma) * L^{2 alpha lambda}: upper bound on |A_{d,alpha,gamma}(L)|.
double cardinality_bound(double alpha, double lambda, const Weights& weights, double radius);

/// ((N-1) / (16 T_{alpha,lambda}(gamma)))^{1/(2 alpha lambda)} <= N*.
double n_star_lower_bound(std::uint64_t n, double alpha, double lambda, const Weights& weights);

/// Closed-form upper bound for the averaged aliasing sum used in the error
/// bound:
///   32/(2-lambda) T/((N-1) N*^{4a-2a lambda})
///     + 16/N^{4a} sum_{u != {}} gamma_u^2 (2^{1+4a} zeta(4a))^{|u|}.
/// Requires 1/(2 alpha) < lambda < 2.
double r_sum_bound(std::uint64_t n, double alpha, double lambda, const Weights& weights,
                   double n_star);

/// Right-hand side of the high-probability squared L2 error bound, with
/// r_sum_bound standing in for the aliasing sum. Diagnostic only.
double theorem_bound(std::uint64_t n, std::uint64_t replicates, double alpha, double lambda,
                     const Weights& weights, double korobov_norm_sq);

}  // namespace mla
