#include "qdarwin/redundancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qdarwin/parallel.hpp"

namespace qdarwin {

double sufficient_threshold(double h_sys, double delta) {
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("sufficient_threshold: delta must be in [0, 1)");
  }
  return (1.0 - delta) * h_sys;
}

namespace {

// Entropy of the support matrix built from an elementwise gamma product.
double entropy_from_gamma(const SystemAmplitudes& amps, const ComplexMatrix& gamma) {
  const int d = amps.d_sys;
  ComplexMatrix rho(d, d);
  for (int i = 0; i < d; ++i) {
    rho(i, i) = std::norm(amps.s[i]);
    for (int j = i + 1; j < d; ++j) {
      Complex value = amps.s[i] * std::conj(amps.s[j]) * gamma(i, j);
      rho(i, j) = value;
      rho(j, i) = std::conj(value);
    }
  }
  return entropy_of_spectrum(eigen_hermitian(rho, /*want_vectors=*/false).values);
}

ComplexMatrix elementwise_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) {
    out.data()[i] *= b.data()[i];
  }
  return out;
}

}  // namespace

NDeltaResult n_delta_detailed(const BranchingState& state, double delta,
                              int n_permutations, const RngStream& rng,
                              ThresholdConvention convention) {
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("n_delta: delta must be in (0, 1)");
  }
  if (n_permutations < 1) {
    throw std::invalid_argument("n_delta: n_permutations must be >= 1");
  }
  const int n = state.n_env();
  const int d = state.d_sys();
  const SystemAmplitudes& amps = state.amplitudes();

  Fragment all;
  all.members.resize(n);
  std::iota(all.members.begin(), all.members.end(), 0);
  const ComplexMatrix gamma_all = fragment_decoherence(state, all);
  const double h_sys = entropy_from_gamma(amps, gamma_all);
  const double base = (convention == ThresholdConvention::plateau) ? h_sys : 2.0 * h_sys;
  const double threshold = sufficient_threshold(base, delta);

  NDeltaResult result;
  result.threshold_nats = threshold;
  result.h_sys = h_sys;
  result.packings.resize(n_permutations);

  long long total_count = 0;
  long long total_first = 0;
  int with_fragment = 0;

  for (int p = 0; p < n_permutations; ++p) {
    RngStream stream = rng.substream(p);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < n - 1; ++i) {
      int j = i + static_cast<int>(stream.next_double() * (n - i));
      j = std::min(j, n - 1);
      std::swap(perm[i], perm[j]);
    }

    // Prefix/suffix gamma products over the permuted order let the
    // complement of any consecutive run come out in O(d^2).
    std::vector<ComplexMatrix> prefix(n + 1), suffix(n + 1);
    prefix[0] = ComplexMatrix::ones(d, d);
    for (int i = 0; i < n; ++i) {
      prefix[i + 1] = elementwise_product(prefix[i], state.overlap(perm[i]));
    }
    suffix[n] = ComplexMatrix::ones(d, d);
    for (int i = n - 1; i >= 0; --i) {
      suffix[i] = elementwise_product(suffix[i + 1], state.overlap(perm[i]));
    }

    GreedyPacking& packing = result.packings[p];
    int start = 0;
    ComplexMatrix gamma_frag = ComplexMatrix::ones(d, d);
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      gamma_frag = elementwise_product(gamma_frag, state.overlap(perm[i]));
      members.push_back(perm[i]);
      double h_f = entropy_from_gamma(amps, gamma_frag);
      double h_sf = entropy_from_gamma(
          amps, elementwise_product(prefix[start], suffix[i + 1]));
      double info = h_sys + h_f - h_sf;
      if (info >= threshold) {
        packing.fragments.push_back(make_fragment(members, n));
        if (packing.first_sufficient_size == 0) {
          packing.first_sufficient_size = static_cast<int>(members.size());
        }
        members.clear();
        gamma_frag = ComplexMatrix::ones(d, d);
        start = i + 1;
      }
    }
    total_count += static_cast<long long>(packing.fragments.size());
    if (packing.first_sufficient_size > 0) {
      total_first += packing.first_sufficient_size;
      ++with_fragment;
    }
  }

  result.mean_count = static_cast<double>(total_count) / n_permutations;
  result.permutations_with_fragment = with_fragment;
  result.mean_first_size =
      with_fragment > 0 ? static_cast<double>(total_first) / with_fragment
                        : std::numeric_limits<double>::infinity();
  return result;
}

double n_delta(const BranchingState& state, double delta, int n_permutations,
               const RngStream& rng, ThresholdConvention convention) {
  return n_delta_detailed(state, delta, n_permutations, rng, convention).mean_count;
}

RedundancyReport r_delta(const BranchingState& state, double delta, int n_permutations,
                         const RngStream& rng, ThresholdConvention convention) {
  NDeltaResult detail = n_delta_detailed(state, delta, n_permutations, rng, convention);
  RedundancyReport report;
  report.delta = delta;
  report.n_delta_mean = detail.mean_count;
  report.r_delta = (1.0 - delta) * detail.mean_count - 1.0;
  report.m_delta_mean = detail.mean_first_size;
  report.specific_r = std::isfinite(detail.mean_first_size)
                          ? (1.0 - delta) / detail.mean_first_size
                          : 0.0;
  report.threshold_nats = detail.threshold_nats;
  report.samples = n_permutations;
  return report;
}

RedundancyReport ensemble_redundancy(const UniverseSpec& spec, double delta, int n_states,
                                     int n_permutations, const RngStream& rng,
                                     unsigned workers, ThresholdConvention convention) {
  validate_universe_spec(spec);
  if (n_states < 1) {
    throw std::invalid_argument("ensemble_redundancy: n_states must be >= 1");
  }
  const bool ghz = spec.initial_state == InitialState::ghz;

  std::vector<RedundancyReport> reports(n_states);
  parallel_for(static_cast<std::size_t>(n_states), workers, [&](std::size_t i) {
    RngStream sample_stream = rng.substream(2 * i);
    BranchingState state = ghz ? ghz_branching_state(spec)
                               : sample_branching_state(spec, sample_stream);
    reports[i] = r_delta(state, delta, n_permutations, rng.substream(2 * i + 1), convention);
  });

  RedundancyReport mean;
  mean.delta = delta;
  mean.samples = n_states;
  double m_sum = 0.0;
  int m_count = 0;
  for (const auto& r : reports) {
    mean.n_delta_mean += r.n_delta_mean;
    mean.threshold_nats += r.threshold_nats;
    if (std::isfinite(r.m_delta_mean)) {
      m_sum += r.m_delta_mean;
      ++m_count;
    }
  }
  mean.n_delta_mean /= n_states;
  mean.threshold_nats /= n_states;
  mean.r_delta = (1.0 - delta) * mean.n_delta_mean - 1.0;
  mean.m_delta_mean = m_count > 0 ? m_sum / m_count
                                  : std::numeric_limits<double>::infinity();
  mean.specific_r = m_count > 0 ? (1.0 - delta) / mean.m_delta_mean : 0.0;
  return mean;
}

SpecificRedundancySweep specific_redundancy_sweep(const UniverseSpec& base_spec,
                                                  const std::vector<int>& n_env_values,
                                                  double delta, int n_states,
                                                  int n_permutations, const RngStream& rng,
                                                  unsigned workers) {
  if (n_env_values.size() < 3) {
    throw std::invalid_argument("specific_redundancy_sweep: need at least 3 n_env values");
  }
  SpecificRedundancySweep sweep;
  sweep.n_env_values = n_env_values;
  for (std::size_t i = 0; i < n_env_values.size(); ++i) {
    UniverseSpec spec = base_spec;
    spec.n_env = n_env_values[i];
    RedundancyReport report =
        ensemble_redundancy(spec, delta, n_states, n_permutations, rng.substream(i), workers);
    sweep.r_delta_mean.push_back(report.r_delta);
    sweep.r_per_n.push_back(report.r_delta / n_env_values[i]);
  }

  // Least squares R_delta vs n_env.
  const std::size_t n = n_env_values.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = n_env_values[i];
    double y = sweep.r_delta_mean[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double denom = n * sxx - sx * sx;
  sweep.slope = (n * sxy - sx * sy) / denom;
  sweep.intercept = (sy - sweep.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = sweep.slope * n_env_values[i] + sweep.intercept;
    double resid = sweep.r_delta_mean[i] - fit;
    ss_res += resid * resid;
  }
  sweep.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return sweep;
}

ScaledPip scaled_pip(const Pip& pip) {
  if (pip.h_sys <= 0.0) {
    throw std::invalid_argument("scaled_pip: pip has no plateau reference entropy");
  }
  ScaledPip out;
  const double full_info = 2.0 * pip.h_sys;
  for (int m = 0; m <= pip.n_env; ++m) {
    out.f_cap.push_back(static_cast<double>(m) / pip.n_env);
    out.f_i.push_back(pip.i_mean[m] / full_info);
    out.f_i_std.push_back(pip.i_std[m] / full_info);
    out.samples.push_back(pip.samples[m]);
  }
  return out;
}

InfoDecomposition decompose_information(const Pip& pip, double delta) {
  if (delta <= 0.0 || delta >= 1.0) {
    throw std::invalid_argument("decompose_information: delta must be in (0, 1)");
  }
  if (pip.n_env < 1) {
    throw std::invalid_argument("decompose_information: empty pip");
  }
  const double threshold = sufficient_threshold(pip.h_sys, delta);
  const double full_info = 2.0 * pip.h_sys;

  InfoDecomposition out;
  out.i_redundant = 0.0;
  // Information only counts as redundant when a fragment of less than half
  // the environment reaches the threshold; otherwise a disjoint second
  // sufficient fragment cannot exist and everything is encoded.
  for (int m = 1; 2 * m < pip.n_env; ++m) {
    if (pip.i_mean[m] >= threshold) {
      out.i_redundant = pip.i_mean[m];
      break;
    }
  }
  out.i_quantum = full_info - pip.i_mean[pip.n_env - 1];
  out.i_nonredundant = full_info - out.i_redundant - out.i_quantum;
  // Clamp the roundoff-negative cases.
  if (out.i_quantum < 0.0 && out.i_quantum > -1e-9) {
    out.i_quantum = 0.0;
  }
  if (out.i_nonredundant < 0.0 && out.i_nonredundant > -1e-9) {
    out.i_nonredundant = 0.0;
  }
  return out;
}

}  // namespace qdarwin
