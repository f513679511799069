#pragma once

#include <cstdint>

#include "qdarwin/rng.hpp"
#include "qdarwin/universe.hpp"

namespace qdarwin {

/// A Hilbert space dimension that may be far too large for machine
/// integers; always carries its logarithm, and the exact integer when it
/// fits.
struct HilbertDim {
  double log_value = 0.0;
  std::uint64_t value = 1;
  bool has_value = true;
};

HilbertDim hilbert_dim(std::uint64_t value);
HilbertDim hilbert_dim_pow(std::uint64_t base, int exponent);
HilbertDim operator*(const HilbertDim& a, const HilbertDim& b);

/// Page's formula: mean entropy (nats) of an m-dimensional subsystem of an
/// m*n-dimensional pure system drawn from the uniform ensemble; requires
/// 1 <= m <= n (callers swap arguments for the larger subsystem).
/// Evaluated through the digamma function.
double page_mean_entropy(std::uint64_t m, std::uint64_t n);

/// Reference path: the finite harmonic sum, summed term by term.
/// Intended for cross-checks; cost grows with m*n.
double page_mean_entropy_harmonic(std::uint64_t m, std::uint64_t n);

/// Page's formula in log-dimension form, usable when m*n overflows machine
/// integers. Arguments in either order; the smaller is the subsystem.
double page_mean_entropy_dim(const HilbertDim& a, const HilbertDim& b);

/// Uniform-ensemble PIP from the closed-form three-term Page combination.
/// Works for n_env into the hundreds via log-domain dimensions.
Pip haar_pip_analytic(const UniverseSpec& spec);

/// Monte Carlo estimate over Haar-random universe states; fragment
/// membership is {1..m}, which is representative because the ensemble is
/// permutation symmetric in distribution. Guarded to total dimension 2^14.
Pip haar_pip_montecarlo(const UniverseSpec& spec, int n_samples, const RngStream& rng,
                        unsigned workers = 0);

inline constexpr long long haar_montecarlo_dim_guard = 1LL << 14;

}  // namespace qdarwin
