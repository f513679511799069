#include "qdarwin/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdarwin {

DFactorStats d_factor_stats(int d_env) {
  if (d_env < 2) {
    throw std::invalid_argument("d_factor_stats: d_env must be >= 2");
  }
  DFactorStats stats;
  stats.d_env = d_env;
  stats.mean_d = 0.5 * (digamma(static_cast<double>(d_env)) + euler_gamma);
  double variance = std::numbers::pi * std::numbers::pi / 24.0 -
                    trigamma(static_cast<double>(d_env)) / 4.0;
  stats.std_d = std::sqrt(std::max(variance, 0.0));
  return stats;
}

double h_series(const std::vector<double>& spectrum, double tolerance) {
  if (tolerance <= 0.0) {
    throw std::invalid_argument("h_series: tolerance must be positive");
  }
  std::vector<double> support;
  double total = 0.0;
  for (double lambda : spectrum) {
    if (lambda < -1e-12) {
      throw std::invalid_argument("h_series: spectrum must be nonnegative");
    }
    if (lambda > 0.0) {
      support.push_back(lambda);
      total += lambda;
    }
  }
  if (support.empty() || std::abs(total - 1.0) > 1e-8) {
    throw std::invalid_argument("h_series: spectrum must sum to 1");
  }

  // t_q = tr[rho (1-rho)^q], computed incrementally; anti-diagonal s
  // contributes sum_{n+p=s} t_n t_p / (s+1).
  constexpr std::size_t max_diagonals = 100000;
  std::vector<double> t;
  t.reserve(256);
  std::vector<double> w = support;  // w_i = lambda_i (1-lambda_i)^q
  double sum = 0.0;
  for (std::size_t s = 0; s < max_diagonals; ++s) {
    double tq = 0.0;
    for (double v : w) {
      tq += v;
    }
    t.push_back(tq);
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] *= 1.0 - support[i];
    }
    double diagonal = 0.0;
    for (std::size_t n = 0; n < t.size(); ++n) {
      diagonal += t[n] * t[s - n];
    }
    diagonal /= static_cast<double>(s + 1);
    sum += diagonal;
    if (diagonal < tolerance) {
      return sum;
    }
  }
  throw NumericalError("h_series: did not converge within the anti-diagonal cap");
}

double approx_entropy(double h0, double mean_gamma_sq) {
  if (h0 < 0.0) {
    throw std::invalid_argument("approx_entropy: h0 must be nonnegative");
  }
  if (mean_gamma_sq < 0.0 || mean_gamma_sq > 1.0) {
    throw std::invalid_argument("approx_entropy: mean_gamma_sq must be in [0, 1]");
  }
  return h0 - 0.5 * mean_gamma_sq * (std::exp(h0) - 1.0);
}

ApproxPip approx_pip(const UniverseSpec& spec, double h0) {
  validate_universe_spec(spec);
  ApproxPip out;
  out.n_env = spec.n_env;
  out.h0 = h0;
  out.i_mean.resize(spec.n_env + 1);
  out.valid.resize(spec.n_env + 1);
  const double log_de = std::log(static_cast<double>(spec.d_env));
  const double amp = 0.5 * (std::exp(h0) - 1.0);
  for (int m = 0; m <= spec.n_env; ++m) {
    double down = std::exp(-m * log_de);
    double up = std::exp(-(spec.n_env - m) * log_de);
    out.i_mean[m] = h0 - amp * (down - up);
    out.valid[m] = (m * log_de >= h0) ? 1 : 0;
  }
  return out;
}

double pdf_gamma(double gamma, int d_env) {
  if (d_env < 2) {
    throw std::invalid_argument("pdf_gamma: d_env must be >= 2");
  }
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("pdf_gamma: gamma must be in [0, 1]");
  }
  return 2.0 * (d_env - 1) * gamma * std::pow(1.0 - gamma * gamma, d_env - 2);
}

double pdf_d(double d, int d_env) {
  if (d_env < 2) {
    throw std::invalid_argument("pdf_d: d_env must be >= 2");
  }
  if (d < 0.0) {
    throw std::invalid_argument("pdf_d: d must be nonnegative");
  }
  double e = std::exp(-2.0 * d);
  return 2.0 * (d_env - 1) * e * std::pow(1.0 - e, d_env - 2);
}

double sample_d(int d_env, RngStream& rng) {
  if (d_env < 2) {
    throw std::invalid_argument("sample_d: d_env must be >= 2");
  }
  double u = rng.next_double();
  double gamma = std::sqrt(1.0 - std::pow(u, 1.0 / (d_env - 1)));
  if (gamma <= 0.0) {
    return 700.0;  // u rounded to 1; deeper than any double overlap
  }
  return -std::log(gamma);
}

namespace {

double sufficiency_log_threshold(int d_sys, double delta, double h_sys_nats) {
  if (d_sys < 2) {
    throw std::invalid_argument("d_sys must be >= 2");
  }
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("delta must be in (0, 1)");
  }
  if (h_sys_nats <= 0.0) {
    throw std::invalid_argument("h_sys must be positive");
  }
  // ln(D_S - 1) - ln(2 delta H_S); non-positive means one subenvironment
  // already provides sufficient information.
  return std::log(static_cast<double>(d_sys - 1)) - std::log(2.0 * delta * h_sys_nats);
}

}  // namespace

MeanFragmentSize mean_fragment_size(int d_sys, int d_env, double delta,
                                    double h_sys_nats) {
  double log_term = sufficiency_log_threshold(d_sys, delta, h_sys_nats);
  if (log_term <= 0.0) {
    return {1.0, true};
  }
  DFactorStats stats = d_factor_stats(d_env);
  double mean = stats.mean_d;
  double var = stats.std_d * stats.std_d;
  double m = log_term / (2.0 * mean) + var / (2.0 * mean * mean) + 0.5;
  return {m, false};
}

SpecificRedundancyEstimate approx_specific_redundancy(int d_sys, int d_env, double delta,
                                                      double h_sys_nats) {
  double log_term = sufficiency_log_threshold(d_sys, delta, h_sys_nats);
  if (log_term <= 0.0) {
    return {1.0 - delta, true};
  }
  DFactorStats stats = d_factor_stats(d_env);
  double mean = stats.mean_d;
  double var = stats.std_d * stats.std_d;
  double r = 2.0 * mean * mean * (1.0 - delta) /
             (var + mean * mean + mean * log_term);
  return {r, false};
}

double thumbnail_specific_redundancy(int d_sys, int d_env, double delta) {
  if (d_sys < 2 || d_env < 2) {
    throw std::invalid_argument("thumbnail_specific_redundancy: dimensions must be >= 2");
  }
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("thumbnail_specific_redundancy: delta must be in (0, 1)");
  }
  return std::log(static_cast<double>(d_env)) /
         (std::log(static_cast<double>(d_sys)) - std::log(delta));
}

double entropy_correction_leading(const std::vector<double>& spectrum,
                                  const ComplexMatrix& gamma_matrix) {
  const int d = gamma_matrix.rows();
  if (!gamma_matrix.is_square() || d != static_cast<int>(spectrum.size())) {
    throw std::invalid_argument("entropy_correction_leading: shape mismatch");
  }
  if (gamma_matrix.hermiticity_violation() > tol::hermitian) {
    throw std::invalid_argument("entropy_correction_leading: gamma not conjugate symmetric");
  }
  if (d < 2) {
    return 0.0;
  }
  double mean_gamma_sq = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j) {
        mean_gamma_sq += std::norm(gamma_matrix(i, j));
      }
    }
  }
  mean_gamma_sq /= static_cast<double>(d) * (d - 1);
  if (mean_gamma_sq == 0.0) {
    return 0.0;
  }
  return -0.5 * mean_gamma_sq * (h_series(spectrum, 1e-12) - 1.0);
}

}  // namespace qdarwin
