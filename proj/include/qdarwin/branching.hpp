#pragma once

#include <vector>

#include "qdarwin/qmath.hpp"
#include "qdarwin/rng.hpp"
#include "qdarwin/universe.hpp"

namespace qdarwin {

/// System amplitudes s_n in the pointer basis; unit 2-norm. The decohered
/// spectrum is lambda_n = |s_n|^2.
struct SystemAmplitudes {
  int d_sys = 0;
  std::vector<Complex> s;
};

void validate_amplitudes(const SystemAmplitudes& amps);

/// Uniform amplitudes 1/sqrt(d_sys): the maximally measurable case,
/// decohered entropy ln(d_sys).
SystemAmplitudes hadamard_amplitudes(int d_sys);

/// Geometric amplitudes s_n proportional to 2^(-n/2); the decohered
/// spectrum is that of a thermal spin, entropy below (and tending to)
/// 2 bits.
SystemAmplitudes thermal_amplitudes(int d_sys);

/// Resolves the spec's initial-state choice to amplitudes. The ghz kind
/// uses uniform amplitudes.
SystemAmplitudes amplitudes_for(const UniverseSpec& spec);

/// Decohered spectrum |s_n|^2.
std::vector<double> decohered_spectrum(const SystemAmplitudes& amps);

/// Set of subenvironment indices (0-based), sorted, no duplicates.
struct Fragment {
  std::vector<int> members;
};

Fragment make_fragment(std::vector<int> members, int n_env);
Fragment complement_fragment(const Fragment& frag, int n_env);
Fragment random_fragment(int size, int n_env, RngStream& rng);

/// Compressed representation of a singly-branching universe state: system
/// amplitudes plus, per subenvironment, the Gram matrix of conditional
/// environment states gamma^(k)_ij = <E_j^(k)|E_i^(k)>. All reduced states
/// on the d_sys-dimensional support follow from these overlaps alone;
/// d_env is kept for provenance.
class BranchingState {
 public:
  BranchingState(SystemAmplitudes amplitudes, std::vector<ComplexMatrix> overlaps,
                 int d_env);

  int d_sys() const { return amplitudes_.d_sys; }
  int d_env() const { return d_env_; }
  int n_env() const { return static_cast<int>(overlaps_.size()); }
  const SystemAmplitudes& amplitudes() const { return amplitudes_; }
  const ComplexMatrix& overlap(int k) const { return overlaps_[k]; }

 private:
  SystemAmplitudes amplitudes_;
  std::vector<ComplexMatrix> overlaps_;
  int d_env_;
};

/// Draws the conditional environment states: for each subenvironment,
/// d_sys Haar states of dimension d_env.
std::vector<std::vector<PureState>> sample_conditional_states(const UniverseSpec& spec,
                                                              RngStream& rng);

BranchingState branching_state_from_conditionals(
    SystemAmplitudes amplitudes, const std::vector<std::vector<PureState>>& conditionals);

/// Draws a branching state from the ensemble: conditional states Haar
/// random and independent across subenvironments and branches.
BranchingState sample_branching_state(const UniverseSpec& spec, RngStream& rng);

/// The dense universe vector sum_n s_n |n> (x) |E_n^(1)> ... |E_n^(N)>.
/// Desk-scale oracle for the compressed representation.
PureState dense_universe_state(const SystemAmplitudes& amplitudes,
                               const std::vector<std::vector<PureState>>& conditionals);

/// Generalized GHZ state: conditional states orthonormal, so every
/// off-diagonal overlap vanishes. Requires d_env >= d_sys.
BranchingState ghz_branching_state(const UniverseSpec& spec);

/// Elementwise product Gamma_ij = prod_{k in frag} gamma^(k)_ij, with unit
/// diagonal; magnitudes below 1e-300 flush to exactly zero.
ComplexMatrix fragment_decoherence(const BranchingState& state, const Fragment& frag);

enum class ReducedWhich { system, fragment, system_plus_fragment };

/// Reduced density matrix on the d_sys-dimensional support:
/// rho_ij = s_i conj(s_j) * Gamma_ij with Gamma over all subenvironments
/// (system), the fragment's members (fragment), or their complement
/// (system_plus_fragment).
DensityMatrix reduced_density(const BranchingState& state, ReducedWhich which,
                              const Fragment& frag = {});

/// Entropy of the fully decohered system, H(rho_S), nats.
double system_entropy(const BranchingState& state);

/// I(S : fragment) = H_S + H_F - H_SF, nats.
double mutual_information(const BranchingState& state, const Fragment& frag);

/// Ensemble-averaged exact PIP: n_states branching states, and for each
/// (state, m) a fresh substream drawing n_fragments_per_m uniformly random
/// m-subsets. i_std is the dispersion over states of the per-state mean.
Pip exact_pip(const UniverseSpec& spec, int n_states, int n_fragments_per_m,
              const RngStream& rng, unsigned workers = 0);

inline constexpr int exact_pip_env_guard = 512;

}  // namespace qdarwin
