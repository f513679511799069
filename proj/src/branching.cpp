#include "qdarwin/branching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qdarwin/parallel.hpp"

namespace qdarwin {

void validate_amplitudes(const SystemAmplitudes& amps) {
  if (amps.d_sys < 1 || static_cast<std::size_t>(amps.d_sys) != amps.s.size()) {
    throw std::invalid_argument("system amplitudes: dimension and entry count disagree");
  }
  double norm2 = 0.0;
  for (const auto& a : amps.s) {
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > tol::unit_norm) {
    throw std::invalid_argument("system amplitudes not normalized");
  }
}

SystemAmplitudes hadamard_amplitudes(int d_sys) {
  if (d_sys < 1) {
    throw std::invalid_argument("hadamard_amplitudes: d_sys must be positive");
  }
  SystemAmplitudes amps;
  amps.d_sys = d_sys;
  amps.s.assign(d_sys, Complex{1.0 / std::sqrt(static_cast<double>(d_sys)), 0.0});
  return amps;
}

SystemAmplitudes thermal_amplitudes(int d_sys) {
  if (d_sys < 2) {
    throw std::invalid_argument("thermal_amplitudes: d_sys must be >= 2");
  }
  SystemAmplitudes amps;
  amps.d_sys = d_sys;
  amps.s.resize(d_sys);
  double z2 = 0.0;
  for (int n = 0; n < d_sys; ++n) {
    z2 += std::pow(2.0, -n);
  }
  double z = std::sqrt(z2);
  for (int n = 0; n < d_sys; ++n) {
    amps.s[n] = Complex{std::pow(2.0, -0.5 * n) / z, 0.0};
  }
  return amps;
}

SystemAmplitudes amplitudes_for(const UniverseSpec& spec) {
  switch (spec.initial_state) {
    case InitialState::hadamard:
    case InitialState::ghz:
      return hadamard_amplitudes(spec.d_sys);
    case InitialState::thermal:
      return thermal_amplitudes(spec.d_sys);
    case InitialState::custom: {
      SystemAmplitudes amps{spec.d_sys, spec.custom_amplitudes};
      validate_amplitudes(amps);
      return amps;
    }
  }
  return hadamard_amplitudes(spec.d_sys);
}

std::vector<double> decohered_spectrum(const SystemAmplitudes& amps) {
  std::vector<double> lambda(amps.s.size());
  for (std::size_t i = 0; i < amps.s.size(); ++i) {
    lambda[i] = std::norm(amps.s[i]);
  }
  return lambda;
}

Fragment make_fragment(std::vector<int> members, int n_env) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw std::invalid_argument("fragment: duplicate member index");
  }
  if (!members.empty() && (members.front() < 0 || members.back() >= n_env)) {
    throw std::invalid_argument("fragment: member index out of range");
  }
  return Fragment{std::move(members)};
}

Fragment complement_fragment(const Fragment& frag, int n_env) {
  Fragment out;
  std::size_t fi = 0;
  for (int k = 0; k < n_env; ++k) {
    if (fi < frag.members.size() && frag.members[fi] == k) {
      ++fi;
    } else {
      out.members.push_back(k);
    }
  }
  return out;
}

Fragment random_fragment(int size, int n_env, RngStream& rng) {
  if (size < 0 || size > n_env) {
    throw std::invalid_argument("random_fragment: size out of range");
  }
  std::vector<int> indices(n_env);
  std::iota(indices.begin(), indices.end(), 0);
  // Partial Fisher-Yates: the first `size` entries become the sample.
  for (int i = 0; i < size; ++i) {
    int j = i + static_cast<int>(rng.next_double() * (n_env - i));
    j = std::min(j, n_env - 1);
    std::swap(indices[i], indices[j]);
  }
  indices.resize(size);
  return make_fragment(std::move(indices), n_env);
}

BranchingState::BranchingState(SystemAmplitudes amplitudes,
                               std::vector<ComplexMatrix> overlaps, int d_env)
    : amplitudes_(std::move(amplitudes)), overlaps_(std::move(overlaps)), d_env_(d_env) {
  validate_amplitudes(amplitudes_);
  for (const auto& g : overlaps_) {
    if (g.rows() != amplitudes_.d_sys || g.cols() != amplitudes_.d_sys) {
      throw std::invalid_argument("branching state: overlap matrix has wrong shape");
    }
    if (g.hermiticity_violation() > tol::hermitian) {
      throw std::invalid_argument("branching state: overlap matrix not conjugate symmetric");
    }
    for (int i = 0; i < g.rows(); ++i) {
      if (g(i, i) != Complex{1.0, 0.0}) {
        throw std::invalid_argument("branching state: overlap diagonal must be exactly 1");
      }
      for (int j = 0; j < g.cols(); ++j) {
        if (std::abs(g(i, j)) > 1.0 + 1e-9) {
          throw std::invalid_argument("branching state: overlap magnitude exceeds 1");
        }
      }
    }
  }
}

std::vector<std::vector<PureState>> sample_conditional_states(const UniverseSpec& spec,
                                                              RngStream& rng) {
  validate_universe_spec(spec);
  std::vector<std::vector<PureState>> cond(spec.n_env);
  for (int k = 0; k < spec.n_env; ++k) {
    cond[k].reserve(spec.d_sys);
    for (int n = 0; n < spec.d_sys; ++n) {
      cond[k].push_back(haar_state(spec.d_env, rng));
    }
  }
  return cond;
}

BranchingState branching_state_from_conditionals(
    SystemAmplitudes amplitudes, const std::vector<std::vector<PureState>>& conditionals) {
  const int d_sys = amplitudes.d_sys;
  int d_env = 0;
  std::vector<ComplexMatrix> overlaps;
  overlaps.reserve(conditionals.size());
  for (const auto& branch_states : conditionals) {
    if (static_cast<int>(branch_states.size()) != d_sys) {
      throw std::invalid_argument("conditional states: need one state per pointer branch");
    }
    d_env = branch_states.front().dim;
    ComplexMatrix g(d_sys, d_sys);
    for (int i = 0; i < d_sys; ++i) {
      g(i, i) = 1.0;  // exact self-overlap
      for (int j = i + 1; j < d_sys; ++j) {
        Complex overlap = 0.0;  // <E_j|E_i>
        for (int a = 0; a < d_env; ++a) {
          overlap += std::conj(branch_states[j].amplitudes[a]) *
                     branch_states[i].amplitudes[a];
        }
        g(i, j) = overlap;
        g(j, i) = std::conj(overlap);
      }
    }
    overlaps.push_back(std::move(g));
  }
  return BranchingState(std::move(amplitudes), std::move(overlaps), d_env);
}

BranchingState sample_branching_state(const UniverseSpec& spec, RngStream& rng) {
  auto cond = sample_conditional_states(spec, rng);
  return branching_state_from_conditionals(amplitudes_for(spec), cond);
}

PureState dense_universe_state(const SystemAmplitudes& amplitudes,
                               const std::vector<std::vector<PureState>>& conditionals) {
  validate_amplitudes(amplitudes);
  const int d_sys = amplitudes.d_sys;
  long long total = d_sys;
  for (const auto& branch_states : conditionals) {
    total *= branch_states.front().dim;
    if (total > (1LL << 24)) {
      throw DeskScaleError("dense universe state exceeds 2^24 amplitudes");
    }
  }
  PureState psi;
  psi.dim = static_cast<int>(total);
  psi.amplitudes.assign(psi.dim, Complex{0.0, 0.0});
  long long env_dim = total / d_sys;
  for (int n = 0; n < d_sys; ++n) {
    // Accumulate the product of conditional amplitudes branch by branch.
    std::vector<Complex> branch{amplitudes.s[n]};
    for (const auto& states : conditionals) {
      const PureState& e = states[n];
      std::vector<Complex> next(branch.size() * e.dim);
      std::size_t idx = 0;
      for (const Complex& b : branch) {
        for (int a = 0; a < e.dim; ++a) {
          next[idx++] = b * e.amplitudes[a];
        }
      }
      branch = std::move(next);
    }
    for (long long a = 0; a < env_dim; ++a) {
      psi.amplitudes[n * env_dim + a] += branch[a];
    }
  }
  return psi;
}

BranchingState ghz_branching_state(const UniverseSpec& spec) {
  validate_universe_spec(spec);
  if (spec.d_env < spec.d_sys) {
    throw std::invalid_argument(
        "ghz_branching_state: requires d_env >= d_sys for orthogonal records");
  }
  SystemAmplitudes amps = amplitudes_for(spec);
  std::vector<ComplexMatrix> overlaps(spec.n_env, ComplexMatrix::identity(spec.d_sys));
  return BranchingState(std::move(amps), std::move(overlaps), spec.d_env);
}

ComplexMatrix fragment_decoherence(const BranchingState& state, const Fragment& frag) {
  const int d = state.d_sys();
  ComplexMatrix gamma = ComplexMatrix::ones(d, d);
  for (int k : frag.members) {
    if (k < 0 || k >= state.n_env()) {
      throw std::invalid_argument("fragment_decoherence: member index out of range");
    }
    const ComplexMatrix& g = state.overlap(k);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        gamma(i, j) *= g(i, j);
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    gamma(i, i) = 1.0;
    for (int j = 0; j < d; ++j) {
      // Fully decohered entries flush to exact zero rather than denormals.
      if (i != j && std::abs(gamma(i, j)) < 1e-300) {
        gamma(i, j) = 0.0;
      }
    }
  }
  return gamma;
}

namespace {

ComplexMatrix support_matrix(const BranchingState& state, const ComplexMatrix& gamma) {
  const int d = state.d_sys();
  const auto& s = state.amplitudes().s;
  ComplexMatrix rho(d, d);
  for (int i = 0; i < d; ++i) {
    rho(i, i) = std::norm(s[i]);
    for (int j = i + 1; j < d; ++j) {
      Complex value = s[i] * std::conj(s[j]) * gamma(i, j);
      rho(i, j) = value;
      rho(j, i) = std::conj(value);
    }
  }
  return rho;
}

double support_entropy(const BranchingState& state, const ComplexMatrix& gamma) {
  return entropy_of_spectrum(
      eigen_hermitian(support_matrix(state, gamma), /*want_vectors=*/false).values);
}

}  // namespace

DensityMatrix reduced_density(const BranchingState& state, ReducedWhich which,
                              const Fragment& frag) {
  Fragment subset;
  switch (which) {
    case ReducedWhich::system: {
      subset.members.resize(state.n_env());
      std::iota(subset.members.begin(), subset.members.end(), 0);
      break;
    }
    case ReducedWhich::fragment:
      subset = frag;
      break;
    case ReducedWhich::system_plus_fragment:
      subset = complement_fragment(frag, state.n_env());
      break;
  }
  return DensityMatrix(support_matrix(state, fragment_decoherence(state, subset)));
}

double system_entropy(const BranchingState& state) {
  Fragment all;
  all.members.resize(state.n_env());
  std::iota(all.members.begin(), all.members.end(), 0);
  return support_entropy(state, fragment_decoherence(state, all));
}

double mutual_information(const BranchingState& state, const Fragment& frag) {
  const int n = state.n_env();
  for (int k : frag.members) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("mutual_information: fragment index out of range");
    }
  }
  if (frag.members.empty()) {
    return 0.0;
  }
  Fragment all;
  all.members.resize(n);
  std::iota(all.members.begin(), all.members.end(), 0);
  double h_s = support_entropy(state, fragment_decoherence(state, all));
  double h_f = support_entropy(state, fragment_decoherence(state, frag));
  double h_sf = support_entropy(
      state, fragment_decoherence(state, complement_fragment(frag, n)));
  return h_s + h_f - h_sf;
}

Pip exact_pip(const UniverseSpec& spec, int n_states, int n_fragments_per_m,
              const RngStream& rng, unsigned workers) {
  validate_universe_spec(spec);
  if (spec.n_env > exact_pip_env_guard) {
    throw DeskScaleError("exact_pip: n_env exceeds guard of " +
                         std::to_string(exact_pip_env_guard));
  }
  if (n_states < 1 || n_fragments_per_m < 1) {
    throw std::invalid_argument("exact_pip: counts must be >= 1");
  }
  const int n_env = spec.n_env;
  const bool ghz = spec.initial_state == InitialState::ghz;

  std::vector<std::vector<double>> per_state(n_states,
                                             std::vector<double>(n_env + 1, 0.0));
  std::vector<double> h_sys(n_states, 0.0);

  parallel_for(static_cast<std::size_t>(n_states), workers, [&](std::size_t i) {
    RngStream sample_stream = rng.substream(2 * i);
    BranchingState state = ghz ? ghz_branching_state(spec)
                               : sample_branching_state(spec, sample_stream);
    h_sys[i] = system_entropy(state);
    RngStream frag_base = rng.substream(2 * i + 1);
    for (int m = 1; m <= n_env; ++m) {
      RngStream frag_stream = frag_base.substream(m);
      double acc = 0.0;
      for (int f = 0; f < n_fragments_per_m; ++f) {
        Fragment frag = random_fragment(m, n_env, frag_stream);
        acc += mutual_information(state, frag);
      }
      per_state[i][m] = acc / n_fragments_per_m;
    }
  });

  Pip pip;
  pip.n_env = n_env;
  pip.i_mean.assign(n_env + 1, 0.0);
  pip.i_std.assign(n_env + 1, 0.0);
  pip.samples.assign(n_env + 1, n_states);
  for (int m = 0; m <= n_env; ++m) {
    double mean = 0.0;
    for (int i = 0; i < n_states; ++i) {
      mean += per_state[i][m];
    }
    mean /= n_states;
    double var = 0.0;
    for (int i = 0; i < n_states; ++i) {
      double d = per_state[i][m] - mean;
      var += d * d;
    }
    pip.i_mean[m] = mean;
    pip.i_std[m] = (n_states > 1) ? std::sqrt(var / (n_states - 1)) : 0.0;
  }
  double h = 0.0;
  for (double v : h_sys) {
    h += v;
  }
  pip.h_sys = h / n_states;
  return pip;
}

}  // namespace qdarwin
