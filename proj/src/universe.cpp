#include "qdarwin/universe.hpp"

#include <cmath>
#include <stdexcept>

namespace qdarwin {

std::string to_string(InitialState s) {
  switch (s) {
    case InitialState::hadamard: return "hadamard";
    case InitialState::thermal: return "thermal";
    case InitialState::ghz: return "ghz";
    case InitialState::custom: return "custom";
  }
  return "hadamard";
}

InitialState initial_state_from_string(const std::string& name) {
  if (name == "hadamard") return InitialState::hadamard;
  if (name == "thermal") return InitialState::thermal;
  if (name == "ghz") return InitialState::ghz;
  if (name == "custom") return InitialState::custom;
  throw std::invalid_argument("unknown initial state '" + name + "'");
}

void validate_universe_spec(const UniverseSpec& spec) {
  if (spec.d_sys < 2) {
    throw std::invalid_argument("universe spec: d_sys must be >= 2");
  }
  if (spec.d_env < 2) {
    throw std::invalid_argument("universe spec: d_env must be >= 2");
  }
  if (spec.n_env < 1) {
    throw std::invalid_argument("universe spec: n_env must be >= 1");
  }
  if (spec.initial_state == InitialState::custom &&
      static_cast<int>(spec.custom_amplitudes.size()) != spec.d_sys) {
    throw std::invalid_argument("universe spec: custom amplitudes must have d_sys entries");
  }
}

double log_total_dimension(const UniverseSpec& spec) {
  return std::log(static_cast<double>(spec.d_sys)) +
         spec.n_env * std::log(static_cast<double>(spec.d_env));
}

long long total_dimension_checked(const UniverseSpec& spec, long long limit) {
  long long total = spec.d_sys;
  for (int k = 0; k < spec.n_env; ++k) {
    if (total > limit / spec.d_env) {
      throw DeskScaleError("total dimension exceeds guard of " + std::to_string(limit));
    }
    total *= spec.d_env;
  }
  if (total > limit) {
    throw DeskScaleError("total dimension exceeds guard of " + std::to_string(limit));
  }
  return total;
}

std::vector<int> factor_dimensions(const UniverseSpec& spec) {
  std::vector<int> dims(static_cast<std::size_t>(spec.n_env) + 1, spec.d_env);
  dims[0] = spec.d_sys;
  return dims;
}

}  // namespace qdarwin
