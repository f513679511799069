#pragma once

#include <vector>

#include "qdarwin/branching.hpp"
#include "qdarwin/rng.hpp"
#include "qdarwin/universe.hpp"

namespace qdarwin {

/// Which mutual-information level counts as "sufficient". The plateau
/// convention, (1-delta) H_S, matches the classical plateau and the SPIP
/// threshold line at f_I = (1-delta)/2; the total-information convention,
/// (1-delta) I_{S:E} = (1-delta) 2 H_S, is exposed for comparison but
/// disjoint fragments can never jointly meet it.
enum class ThresholdConvention { plateau, total_mutual_information };

/// Sufficiency threshold in nats: (1 - delta) * h_sys.
double sufficient_threshold(double h_sys, double delta);

/// One greedy packing of a random permutation: consecutive subenvironments
/// accumulate into a fragment until its mutual information reaches the
/// threshold, the fragment closes, and packing continues. The trailing
/// partial fragment is discarded.
struct GreedyPacking {
  std::vector<Fragment> fragments;  // the closed (sufficient) fragments
  int first_sufficient_size = 0;    // 0 when the threshold was never reached
};

struct NDeltaResult {
  double mean_count = 0.0;       // N_delta averaged over permutations
  double mean_first_size = 0.0;  // mean size of the first sufficient fragment
  int permutations_with_fragment = 0;
  double threshold_nats = 0.0;
  double h_sys = 0.0;
  std::vector<GreedyPacking> packings;
};

NDeltaResult n_delta_detailed(const BranchingState& state, double delta,
                              int n_permutations, const RngStream& rng,
                              ThresholdConvention convention = ThresholdConvention::plateau);

/// Mean number of disjoint sufficient fragments over random permutations.
double n_delta(const BranchingState& state, double delta, int n_permutations,
               const RngStream& rng,
               ThresholdConvention convention = ThresholdConvention::plateau);

/// N_delta, R_delta = (1-delta) N_delta - 1, mean first-fragment size and
/// specific redundancy (1-delta)/m_delta for one state.
struct RedundancyReport {
  double delta = 0.0;
  double n_delta_mean = 0.0;
  double r_delta = 0.0;        // may be negative; floor at 0 for display only
  double m_delta_mean = 0.0;   // +inf when no permutation reached the threshold
  double specific_r = 0.0;
  double threshold_nats = 0.0;
  long samples = 0;
};

RedundancyReport r_delta(const BranchingState& state, double delta, int n_permutations,
                         const RngStream& rng,
                         ThresholdConvention convention = ThresholdConvention::plateau);

/// Ensemble-averaged report over n_states sampled branching states.
RedundancyReport ensemble_redundancy(const UniverseSpec& spec, double delta, int n_states,
                                     int n_permutations, const RngStream& rng,
                                     unsigned workers = 0,
                                     ThresholdConvention convention = ThresholdConvention::plateau);

/// Ensemble-mean R_delta against n_env, with a least-squares line and its
/// R^2 as the linearity diagnostic. r_per_n holds R_delta / n_env.
struct SpecificRedundancySweep {
  std::vector<int> n_env_values;
  std::vector<double> r_delta_mean;
  std::vector<double> r_per_n;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

SpecificRedundancySweep specific_redundancy_sweep(const UniverseSpec& base_spec,
                                                  const std::vector<int>& n_env_values,
                                                  double delta, int n_states,
                                                  int n_permutations, const RngStream& rng,
                                                  unsigned workers = 0);

/// Rescales a PIP to captured fraction f_cap = m/N and information
/// fraction f_i = I/(2 H_S).
ScaledPip scaled_pip(const Pip& pip);

/// Three-way split of I_{S:E} = 2 H_S for a pure universe: redundant
/// information I(m_delta), quantum information 2H_S - I(N-1), and the
/// non-redundant remainder.
struct InfoDecomposition {
  double i_redundant = 0.0;
  double i_nonredundant = 0.0;
  double i_quantum = 0.0;
};

InfoDecomposition decompose_information(const Pip& pip, double delta);

}  // namespace qdarwin
