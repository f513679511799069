#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qdarwin/qmath.hpp"

namespace qdarwin {

enum class InitialState { hadamard, thermal, ghz, custom };

std::string to_string(InitialState s);
InitialState initial_state_from_string(const std::string& name);

/// The three adjustable ensemble parameters: a D_S-dimensional system in
/// contact with n_env subenvironments of dimension D_E each, plus the
/// choice of system initial state.
struct UniverseSpec {
  int d_sys = 2;
  int d_env = 2;
  int n_env = 1;
  InitialState initial_state = InitialState::hadamard;
  std::vector<Complex> custom_amplitudes;  // used when initial_state == custom
};

void validate_universe_spec(const UniverseSpec& spec);

/// ln of the total Hilbert space dimension d_sys * d_env^n_env.
double log_total_dimension(const UniverseSpec& spec);

/// Total dimension as a machine integer; throws DeskScaleError when it
/// exceeds `limit`.
long long total_dimension_checked(const UniverseSpec& spec, long long limit);

/// Factor dimensions in order: system first, then the subenvironments.
std::vector<int> factor_dimensions(const UniverseSpec& spec);

/// Averaged mutual-information curve I(m) for m = 0..n_env, in nats,
/// with per-m dispersion and sample counts. h_sys is the plateau
/// reference entropy H_S.
struct Pip {
  int n_env = 0;
  std::vector<double> i_mean;
  std::vector<double> i_std;
  std::vector<long> samples;
  double h_sys = 0.0;
};

/// PIP with both axes rescaled to fractions: captured fraction f_cap = m/N
/// and information fraction f_i = I/(2 H_S).
struct ScaledPip {
  std::vector<double> f_cap;
  std::vector<double> f_i;
  std::vector<double> f_i_std;
  std::vector<long> samples;
};

}  // namespace qdarwin
