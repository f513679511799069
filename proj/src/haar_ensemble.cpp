#include "qdarwin/haar_ensemble.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdarwin/parallel.hpp"

namespace qdarwin {

HilbertDim hilbert_dim(std::uint64_t value) {
  if (value == 0) {
    throw std::invalid_argument("Hilbert dimension must be positive");
  }
  return {std::log(static_cast<double>(value)), value, true};
}

HilbertDim hilbert_dim_pow(std::uint64_t base, int exponent) {
  if (base == 0 || exponent < 0) {
    throw std::invalid_argument("hilbert_dim_pow: base must be positive, exponent >= 0");
  }
  HilbertDim out;
  out.log_value = exponent * std::log(static_cast<double>(base));
  out.value = 1;
  out.has_value = true;
  for (int i = 0; i < exponent; ++i) {
    if (out.has_value && out.value > UINT64_MAX / base) {
      out.has_value = false;
      out.value = 0;
    }
    if (out.has_value) {
      out.value *= base;
    }
  }
  return out;
}

HilbertDim operator*(const HilbertDim& a, const HilbertDim& b) {
  HilbertDim out;
  out.log_value = a.log_value + b.log_value;
  out.has_value = a.has_value && b.has_value && (b.value == 0 || a.value <= UINT64_MAX / b.value);
  out.value = out.has_value ? a.value * b.value : 0;
  return out;
}

namespace {

// Digamma of a dimension; for values beyond machine range the asymptotic
// corrections are far below any tolerance used here, so log(x) suffices.
double digamma_of_dim(const HilbertDim& d, std::uint64_t plus) {
  if (d.has_value && d.value <= (UINT64_MAX - plus)) {
    double x = static_cast<double>(d.value) + static_cast<double>(plus);
    return digamma(x);
  }
  return d.log_value;
}

}  // namespace

double page_mean_entropy_dim(const HilbertDim& a, const HilbertDim& b) {
  const HilbertDim& m = (a.log_value <= b.log_value) ? a : b;
  const HilbertDim& n = (a.log_value <= b.log_value) ? b : a;
  if (m.has_value && m.value == 1) {
    return 0.0;
  }
  HilbertDim mn = m * n;
  double psi_mn1 = digamma_of_dim(mn, 1);
  double psi_n1 = digamma_of_dim(n, 1);
  // (m - 1) / (2n), stable in log space for huge dimensions.
  double correction;
  if (m.has_value && n.has_value) {
    correction = (static_cast<double>(m.value) - 1.0) / (2.0 * static_cast<double>(n.value));
  } else {
    correction = 0.5 * std::exp(m.log_value - n.log_value) - 0.5 * std::exp(-n.log_value);
  }
  double h = psi_mn1 - psi_n1 - correction;
  return std::max(h, 0.0);
}

double page_mean_entropy(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || m > n) {
    throw std::invalid_argument(
        "page_mean_entropy: requires 1 <= m <= n; swap arguments for the larger subsystem");
  }
  return page_mean_entropy_dim(hilbert_dim(m), hilbert_dim(n));
}

double page_mean_entropy_harmonic(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || m > n) {
    throw std::invalid_argument(
        "page_mean_entropy_harmonic: requires 1 <= m <= n");
  }
  if (m > UINT64_MAX / n) {
    throw std::invalid_argument("page_mean_entropy_harmonic: m*n overflows");
  }
  // Kahan summation keeps the long harmonic tail accurate to ~1e-15.
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t k = n + 1; k <= m * n; ++k) {
    double term = 1.0 / static_cast<double>(k);
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum - (static_cast<double>(m) - 1.0) / (2.0 * static_cast<double>(n));
}

Pip haar_pip_analytic(const UniverseSpec& spec) {
  validate_universe_spec(spec);
  const int n_env = spec.n_env;
  const std::uint64_t ds = static_cast<std::uint64_t>(spec.d_sys);
  const std::uint64_t de = static_cast<std::uint64_t>(spec.d_env);

  HilbertDim env_total = hilbert_dim_pow(de, n_env);
  double h_sys = page_mean_entropy_dim(hilbert_dim(ds), env_total);

  Pip pip;
  pip.n_env = n_env;
  pip.h_sys = h_sys;
  pip.i_mean.resize(n_env + 1);
  pip.i_std.assign(n_env + 1, 0.0);
  pip.samples.assign(n_env + 1, 1);
  for (int m = 0; m <= n_env; ++m) {
    HilbertDim frag = hilbert_dim_pow(de, m);
    HilbertDim rest = hilbert_dim_pow(de, n_env - m);
    HilbertDim sys_rest = hilbert_dim(ds) * rest;
    HilbertDim sys_frag = hilbert_dim(ds) * frag;
    double h_frag = page_mean_entropy_dim(frag, sys_rest);
    double h_sys_frag = page_mean_entropy_dim(sys_frag, rest);
    pip.i_mean[m] = (m == 0) ? 0.0 : h_sys + h_frag - h_sys_frag;
  }
  return pip;
}

Pip haar_pip_montecarlo(const UniverseSpec& spec, int n_samples, const RngStream& rng,
                        unsigned workers) {
  validate_universe_spec(spec);
  if (n_samples < 1) {
    throw std::invalid_argument("haar_pip_montecarlo: n_samples must be >= 1");
  }
  const long long total = total_dimension_checked(spec, haar_montecarlo_dim_guard);
  const int n_env = spec.n_env;
  const std::vector<int> dims = factor_dimensions(spec);

  // One row of I(m) values per sample; reduced sequentially afterwards so
  // the result is independent of worker scheduling.
  std::vector<std::vector<double>> info(n_samples, std::vector<double>(n_env + 1, 0.0));
  std::vector<double> sys_entropy(n_samples, 0.0);

  parallel_for(static_cast<std::size_t>(n_samples), workers, [&](std::size_t i) {
    RngStream stream = rng.substream(i);
    PureState psi = haar_state(static_cast<int>(total), stream);
    double h_s = entropy_of_bipartite_cut(psi, dims, {0});
    sys_entropy[i] = h_s;
    std::vector<int> fragment;
    std::vector<int> sys_fragment{0};
    for (int m = 1; m <= n_env; ++m) {
      fragment.push_back(m);
      sys_fragment.push_back(m);
      double h_frag = entropy_of_bipartite_cut(psi, dims, fragment);
      double h_sys_frag = entropy_of_bipartite_cut(psi, dims, sys_fragment);
      info[i][m] = h_s + h_frag - h_sys_frag;
    }
  });

  Pip pip;
  pip.n_env = n_env;
  pip.i_mean.assign(n_env + 1, 0.0);
  pip.i_std.assign(n_env + 1, 0.0);
  pip.samples.assign(n_env + 1, n_samples);
  for (int m = 0; m <= n_env; ++m) {
    double mean = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      mean += info[i][m];
    }
    mean /= n_samples;
    double var = 0.0;
    for (int i = 0; i < n_samples; ++i) {
      double d = info[i][m] - mean;
      var += d * d;
    }
    pip.i_mean[m] = mean;
    pip.i_std[m] = (n_samples > 1) ? std::sqrt(var / (n_samples - 1)) : 0.0;
  }
  double h_mean = 0.0;
  for (double h : sys_entropy) {
    h_mean += h;
  }
  pip.h_sys = h_mean / n_samples;
  return pip;
}

}  // namespace qdarwin
