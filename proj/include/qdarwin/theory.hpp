#pragma once

#include <vector>

#include "qdarwin/qmath.hpp"
#include "qdarwin/rng.hpp"
#include "qdarwin/universe.hpp"

namespace qdarwin {

/// Mean and standard deviation of the additive decoherence factor
/// d = -log|gamma| for one Haar-random overlap in dimension d_env:
/// mean = (digamma(d_env) + gamma_EM)/2, variance = pi^2/24 - trigamma(d_env)/4.
struct DFactorStats {
  int d_env = 0;
  double mean_d = 0.0;
  double std_d = 0.0;
};

DFactorStats d_factor_stats(int d_env);

/// The double series h(rho0) = sum_{n,p} t_n t_p / (n+p+1) with
/// t_q = tr[rho0 (1-rho0)^q], summed along anti-diagonals n+p = const
/// until an anti-diagonal contributes less than `tolerance`. Equals the
/// support dimension D for a maximally mixed spectrum and is approximated
/// by exp(H0) in general.
double h_series(const std::vector<double>& spectrum, double tolerance = 1e-10);

/// Leading-order decohered entropy H0 - (mean_gamma_sq/2) (e^{H0} - 1).
/// Valid for small mean_gamma_sq; may go negative outside that regime.
double approx_entropy(double h0, double mean_gamma_sq);

/// Closed-form PIP approximation
///   I(m) ~= H0 - (e^{H0}-1)/2 (D_E^-m - D_E^-(N-m)),
/// antisymmetric about m = N/2 where it equals H0 exactly. valid[m] marks
/// the regime m ln(D_E) >= H0 where the exponential form applies; below it
/// the true curve rises linearly.
struct ApproxPip {
  int n_env = 0;
  double h0 = 0.0;
  std::vector<double> i_mean;
  std::vector<char> valid;
};

ApproxPip approx_pip(const UniverseSpec& spec, double h0);

/// p(gamma) = 2 (D-1) gamma (1 - gamma^2)^(D-2) on [0, 1].
double pdf_gamma(double gamma, int d_env);

/// p(d) = 2 (D-1) e^{-2d} (1 - e^{-2d})^(D-2) on [0, inf).
double pdf_d(double d, int d_env);

/// Draws d = -log(gamma) by inverse CDF: gamma = sqrt(1 - u^{1/(D-1)}).
double sample_d(int d_env, RngStream& rng);

/// Mean fragment size needed for sufficient information, from the biased
/// random walk of additive decoherence factors:
///   m = d_delta/mean_d + var_d/(2 mean_d^2) + 1/2,
///   d_delta = [ln(D_S - 1) - ln(2 delta H_S)]/2.
/// When the threshold is non-positive a single subenvironment already
/// suffices; value 1 is returned with the flag set.
struct MeanFragmentSize {
  double value = 1.0;
  bool single_subenvironment_sufficient = false;
};

MeanFragmentSize mean_fragment_size(int d_sys, int d_env, double delta, double h_sys_nats);

/// Specific redundancy estimate
///   r = 2 mean_d^2 (1-delta) / (var_d + mean_d^2 + mean_d [ln(D_S-1) - ln(2 delta H_S)]).
/// Algebraically equal to (1-delta)/mean_fragment_size.
struct SpecificRedundancyEstimate {
  double value = 0.0;
  bool single_subenvironment_sufficient = false;
};

SpecificRedundancyEstimate approx_specific_redundancy(int d_sys, int d_env, double delta,
                                                      double h_sys_nats);

/// Rule of thumb r ~= ln(D_E) / (ln(D_S) - ln(delta)).
double thumbnail_specific_redundancy(int d_sys, int d_env, double delta);

/// Leading-order entropy shift of a near-diagonal density matrix:
/// dH ~= -(mean |gamma|^2 / 2) (h(rho0) - 1), with the mean taken over the
/// off-diagonal entries of gamma_matrix.
double entropy_correction_leading(const std::vector<double>& spectrum,
                                  const ComplexMatrix& gamma_matrix);

}  // namespace qdarwin
