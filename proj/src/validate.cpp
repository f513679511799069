#include "qdarwin/validate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "qdarwin/branching.hpp"
#include "qdarwin/haar_ensemble.hpp"
#include "qdarwin/parallel.hpp"
#include "qdarwin/qmath.hpp"
#include "qdarwin/redundancy.hpp"
#include "qdarwin/theory.hpp"

namespace qdarwin {
namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) {
        detail += "; ";
      }
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) {
      detail += "; ";
    }
    detail += what;
  }
};

// 1. Monte Carlo Haar PIP vs Page's closed form, every m within 4 standard
// errors; bounded runtime.
CriterionResult criterion_page_agreement(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  UniverseSpec spec{2, 2, 6, InitialState::hadamard, {}};
  const int n_samples = 2000;
  Pip mc = haar_pip_montecarlo(spec, n_samples, RngStream(seed, 101), workers);
  Pip exact = haar_pip_analytic(spec);
  Check c;
  for (int m = 0; m <= spec.n_env; ++m) {
    double se = mc.i_std[m] / std::sqrt(static_cast<double>(n_samples));
    double diff = std::abs(mc.i_mean[m] - exact.i_mean[m]);
    c.require(diff <= 4.0 * se + 1e-12,
              "m=" + std::to_string(m) + " |mc-analytic|=" + num(diff) + " > 4se=" +
                  num(4.0 * se));
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(elapsed <= 120.0, "runtime " + num(elapsed) + "s exceeds 120s");
  if (c.ok) {
    c.note("max m-wise deviation within 4 standard errors, " + num(elapsed) + "s");
  }
  return {1, "Page-formula agreement (MC vs analytic, D_S=D_E=2, N=6)", c.ok, c.detail,
          elapsed};
}

// 2. Encoding profile of the uniform ensemble, exact analytic check.
CriterionResult criterion_encoding_profile() {
  auto start = std::chrono::steady_clock::now();
  UniverseSpec spec{2, 2, 12, InitialState::hadamard, {}};
  Pip pip = haar_pip_analytic(spec);
  const double h = pip.h_sys;
  Check c;
  c.require(pip.i_mean[4] < 0.05 * h,
            "I(4)=" + num(pip.i_mean[4]) + " not < 0.05*H_S=" + num(0.05 * h));
  c.require(pip.i_mean[8] > 1.95 * h - pip.i_mean[4],
            "I(8)=" + num(pip.i_mean[8]) + " not > 1.95*H_S - I(4)");
  double antisym = std::abs(pip.i_mean[4] + pip.i_mean[8] - 2.0 * h);
  c.require(antisym <= 1e-9, "antisymmetry residue " + num(antisym) + " > 1e-9");
  c.note("I(4)=" + num(pip.i_mean[4]) + ", I(8)=" + num(pip.i_mean[8]) + ", H_S=" + num(h));
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {2, "Encoding profile of the uniform ensemble (D_S=D_E=2, N=12)", c.ok, c.detail,
          elapsed};
}

// 3. Mutual-information symmetry theorem on branching and Haar states.
CriterionResult criterion_symmetry_theorem(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  Check c;

  const UniverseSpec branch_specs[] = {
      {2, 2, 8, InitialState::hadamard, {}},
      {3, 3, 6, InitialState::hadamard, {}},
      {4, 2, 7, InitialState::thermal, {}},
      {2, 4, 6, InitialState::hadamard, {}},
  };
  std::vector<double> worst_branch(100, 0.0);
  std::vector<int> excess_branch(100, 0);
  parallel_for(100, workers, [&](std::size_t i) {
    const UniverseSpec& spec = branch_specs[i % 4];
    RngStream rng = RngStream(seed, 300).substream(i);
    BranchingState state = sample_branching_state(spec, rng);
    double h_s = system_entropy(state);
    int size = 1 + static_cast<int>(rng.next_double() * (spec.n_env - 1));
    Fragment f = random_fragment(size, spec.n_env, rng);
    Fragment fc = complement_fragment(f, spec.n_env);
    double residue =
        std::abs(mutual_information(state, f) + mutual_information(state, fc) - 2.0 * h_s);
    worst_branch[i] = residue;
    // Disjoint family: chop the environment into chunks of ~size 2.
    int over = 0;
    for (int k = 0; k < spec.n_env; k += 2) {
      std::vector<int> members{k};
      if (k + 1 < spec.n_env) {
        members.push_back(k + 1);
      }
      if (mutual_information(state, make_fragment(members, spec.n_env)) > h_s + 1e-9) {
        ++over;
      }
    }
    excess_branch[i] = over;
  });

  const UniverseSpec haar_specs[] = {
      {2, 2, 6, InitialState::hadamard, {}},
      {2, 2, 7, InitialState::hadamard, {}},
      {3, 2, 6, InitialState::hadamard, {}},
  };
  std::vector<double> worst_haar(100, 0.0);
  std::vector<int> excess_haar(100, 0);
  parallel_for(100, workers, [&](std::size_t i) {
    const UniverseSpec& spec = haar_specs[i % 3];
    RngStream rng = RngStream(seed, 301).substream(i);
    long long total = total_dimension_checked(spec, 1 << 14);
    PureState psi = haar_state(static_cast<int>(total), rng);
    std::vector<int> dims = factor_dimensions(spec);
    double h_s = entropy_of_bipartite_cut(psi, dims, {0});
    int size = 1 + static_cast<int>(rng.next_double() * (spec.n_env - 1));
    Fragment f = random_fragment(size, spec.n_env, rng);
    Fragment fc = complement_fragment(f, spec.n_env);
    auto info = [&](const Fragment& frag) {
      std::vector<int> fr, sf{0};
      for (int k : frag.members) {
        fr.push_back(k + 1);
        sf.push_back(k + 1);
      }
      return h_s + entropy_of_bipartite_cut(psi, dims, fr) -
             entropy_of_bipartite_cut(psi, dims, sf);
    };
    worst_haar[i] = std::abs(info(f) + info(fc) - 2.0 * h_s);
    int over = 0;
    for (int k = 0; k < spec.n_env; k += 2) {
      Fragment chunk;
      chunk.members.push_back(k);
      if (k + 1 < spec.n_env) {
        chunk.members.push_back(k + 1);
      }
      if (info(chunk) > h_s + 1e-9) {
        ++over;
      }
    }
    excess_haar[i] = over;
  });

  double worst = 0.0;
  for (double v : worst_branch) worst = std::max(worst, v);
  for (double v : worst_haar) worst = std::max(worst, v);
  c.require(worst <= 1e-8, "worst |I(F)+I(Fc)-2H_S| = " + num(worst) + " > 1e-8");
  for (int v : excess_branch) {
    c.require(v <= 1, "branching state: " + std::to_string(v) + " disjoint fragments over H_S");
  }
  for (int v : excess_haar) {
    c.require(v <= 1, "haar state: " + std::to_string(v) + " disjoint fragments over H_S");
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require(elapsed <= 60.0, "runtime " + num(elapsed) + "s exceeds 60s");
  if (c.ok) {
    c.note("worst residue " + num(worst) + ", " + num(elapsed) + "s");
  }
  return {3, "Symmetry theorem (100 branching + 100 Haar states)", c.ok, c.detail, elapsed};
}

// 4. Decoherence-factor entropies vs dense partial-trace entropies.
CriterionResult criterion_oracle_equivalence(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  const UniverseSpec specs[] = {
      {2, 2, 8, InitialState::hadamard, {}},  {2, 2, 10, InitialState::hadamard, {}},
      {3, 3, 5, InitialState::hadamard, {}},  {4, 2, 5, InitialState::thermal, {}},
      {2, 4, 5, InitialState::hadamard, {}},  {5, 2, 6, InitialState::hadamard, {}},
      {4, 3, 4, InitialState::hadamard, {}},  {2, 3, 6, InitialState::thermal, {}},
      {6, 2, 5, InitialState::hadamard, {}},  {3, 2, 9, InitialState::hadamard, {}},
  };
  std::vector<double> worst(50, 0.0);
  parallel_for(50, workers, [&](std::size_t i) {
    const UniverseSpec& spec = specs[i % 10];
    RngStream rng = RngStream(seed, 400).substream(i);
    auto conditionals = sample_conditional_states(spec, rng);
    BranchingState state =
        branching_state_from_conditionals(amplitudes_for(spec), conditionals);
    PureState psi = dense_universe_state(amplitudes_for(spec), conditionals);
    std::vector<int> dims = factor_dimensions(spec);

    int size = 1 + static_cast<int>(rng.next_double() * (spec.n_env - 1));
    Fragment f = random_fragment(size, spec.n_env, rng);
    std::vector<int> fr, sf{0};
    for (int k : f.members) {
      fr.push_back(k + 1);
      sf.push_back(k + 1);
    }
    double w = 0.0;
    w = std::max(w, std::abs(system_entropy(state) -
                             entropy_of_bipartite_cut(psi, dims, {0})));
    w = std::max(w, std::abs(von_neumann_entropy(reduced_density(state, ReducedWhich::fragment, f)) -
                             entropy_of_bipartite_cut(psi, dims, fr)));
    w = std::max(w,
                 std::abs(von_neumann_entropy(
                              reduced_density(state, ReducedWhich::system_plus_fragment, f)) -
                          entropy_of_bipartite_cut(psi, dims, sf)));
    worst[i] = w;
  });
  double w = *std::max_element(worst.begin(), worst.end());
  Check c;
  c.require(w <= 1e-8, "worst entropy mismatch " + num(w) + " > 1e-8");
  c.note("worst mismatch " + num(w) + " over 50 states");
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {4, "Oracle equivalence (overlap algebra vs dense partial trace)", c.ok, c.detail,
          elapsed};
}

// 5. GHZ exactness.
CriterionResult criterion_ghz(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  const int n = 16;
  UniverseSpec spec{2, 2, n, InitialState::ghz, {}};
  BranchingState ghz = ghz_branching_state(spec);
  const double h0 = std::log(2.0);
  Check c;
  double worst_mid = 0.0;
  for (int m = 1; m < n; ++m) {
    std::vector<int> members(m);
    std::iota(members.begin(), members.end(), 0);
    worst_mid = std::max(worst_mid,
                         std::abs(mutual_information(ghz, make_fragment(members, n)) - h0));
  }
  c.require(worst_mid <= 1e-12, "plateau deviation " + num(worst_mid) + " > 1e-12");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  double full = mutual_information(ghz, make_fragment(all, n));
  c.require(std::abs(full - 2.0 * h0) <= 1e-12,
            "I(N)=" + num(full) + " differs from 2H_0 beyond 1e-12");
  for (double delta : {0.01, 0.1, 0.25}) {
    double count = n_delta(ghz, delta, 16, RngStream(seed, 500));
    c.require(count == static_cast<double>(n),
              "N_delta=" + num(count) + " != N at delta=" + num(delta));
  }
  if (c.ok) {
    c.note("plateau exact, N_delta = N for all deltas");
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {5, "GHZ exactness (plateau, jump, N_delta)", c.ok, c.detail, elapsed};
}

// 6. Classical plateau and the closed-form PIP near it.
CriterionResult criterion_classical_plateau(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  UniverseSpec spec{2, 2, 32, InitialState::hadamard, {}};
  Pip pip = exact_pip(spec, 200, 32, RngStream(seed, 600), workers);
  ApproxPip theory = approx_pip(spec, std::log(2.0));
  Check c;
  double mid = pip.i_mean[16];
  c.require(std::abs(mid - std::log(2.0)) <= 0.01 * std::log(2.0),
            "I(16)=" + num(mid) + " not within 1% of ln 2");
  double worst = 0.0;
  for (int m = 8; m <= 24; ++m) {
    worst = std::max(worst, std::abs(pip.i_mean[m] - theory.i_mean[m]));
  }
  c.require(worst <= 0.02, "max |exact - theory| = " + num(worst) + " > 0.02 nats on [8,24]");
  c.note("I(16)=" + num(mid) + ", max theory gap " + num(worst));
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {6, "Classical plateau (D_S=D_E=2, N=32, 200 states)", c.ok, c.detail, elapsed};
}

// 7. Decoherence-factor statistics against their closed forms.
CriterionResult criterion_dfactor_table(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  struct Row {
    int d;
    double mean;
    double std;
  };
  const Row table[] = {
      {2, 0.5, 0.5},
      {3, 0.75, std::sqrt(5.0) / 4.0},
      {4, 11.0 / 12.0, 7.0 / 12.0},
      {5, 25.0 / 24.0, std::sqrt(205.0) / 24.0},
      {6, 137.0 / 120.0, std::sqrt(5269.0) / 120.0},
      {8, 363.0 / 280.0, std::sqrt(266681.0) / 840.0},
  };
  Check c;
  for (const Row& row : table) {
    DFactorStats stats = d_factor_stats(row.d);
    c.require(std::abs(stats.mean_d - row.mean) <= 1e-12,
              "mean_d(" + std::to_string(row.d) + ") off by " +
                  num(std::abs(stats.mean_d - row.mean)));
    c.require(std::abs(stats.std_d - row.std) <= 1e-12,
              "std_d(" + std::to_string(row.d) + ") off by " +
                  num(std::abs(stats.std_d - row.std)));
  }
  // Monte Carlo moments at 1e6 samples, 4 sigma. The variance estimator's
  // own standard error needs the fourth moment; the d distribution is far
  // from Gaussian (kurtosis 9 at D_E = 2), so the sqrt(2n) shortcut is off
  // by 2x there.
  const int n = 1000000;
  for (const Row& row : table) {
    std::vector<std::array<double, 4>> partial(64, {0.0, 0.0, 0.0, 0.0});
    parallel_for(64, workers, [&](std::size_t chunk) {
      RngStream rng = RngStream(seed, 700 + row.d).substream(chunk);
      double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
      int count = n / 64 + (static_cast<int>(chunk) < n % 64 ? 1 : 0);
      for (int i = 0; i < count; ++i) {
        double d = sample_d(row.d, rng);
        double d2 = d * d;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
      }
      partial[chunk] = {s1, s2, s3, s4};
    });
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const auto& p : partial) {
      m1 += p[0];
      m2 += p[1];
      m3 += p[2];
      m4 += p[3];
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    double var = m2 - m1 * m1;
    double central4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * std::pow(m1, 4);

    double se_mean = std::sqrt(var / n);
    c.require(std::abs(m1 - row.mean) <= 4.0 * se_mean,
              "MC mean(" + std::to_string(row.d) + ") deviates " +
                  num(std::abs(m1 - row.mean) / se_mean) + " sigma");
    double se_var = std::sqrt((central4 - var * var) / n);
    double true_var = row.std * row.std;
    c.require(std::abs(var - true_var) <= 4.0 * se_var,
              "MC variance(" + std::to_string(row.d) + ") deviates " +
                  num(std::abs(var - true_var) / se_var) + " sigma");
  }
  if (c.ok) {
    c.note("closed forms exact to 1e-12; MC moments within 4 sigma at 1e6 draws");
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {7, "d-factor table reproduction (D_E in {2,3,4,5,6,8})", c.ok, c.detail, elapsed};
}

// 8. Redundancy grows linearly with the number of environments.
CriterionResult criterion_redundancy_scaling(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  const std::vector<int> ns{16, 32, 64};
  Check c;
  UniverseSpec spec55{5, 5, 16, InitialState::hadamard, {}};
  SpecificRedundancySweep sweep =
      specific_redundancy_sweep(spec55, ns, 0.1, 32, 16, RngStream(seed, 800), workers);
  c.require(sweep.r_squared >= 0.98,
            "R^2 = " + num(sweep.r_squared) + " below 0.98 for D_S=D_E=5");

  UniverseSpec spec52{5, 2, 16, InitialState::hadamard, {}};
  UniverseSpec spec58{5, 8, 16, InitialState::hadamard, {}};
  SpecificRedundancySweep low =
      specific_redundancy_sweep(spec52, ns, 0.1, 32, 16, RngStream(seed, 801), workers);
  SpecificRedundancySweep high =
      specific_redundancy_sweep(spec58, ns, 0.1, 32, 16, RngStream(seed, 802), workers);
  c.require(high.slope > low.slope,
            "slope(D_E=8)=" + num(high.slope) + " not above slope(D_E=2)=" + num(low.slope));
  c.note("R^2=" + num(sweep.r_squared) + ", slopes " + num(low.slope) + " (D_E=2) vs " +
         num(high.slope) + " (D_E=8)");
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {8, "Redundancy scaling with N_env (linear fit, slope vs D_E)", c.ok, c.detail,
          elapsed};
}

// 9. Specific redundancy vs the random-walk estimate.
CriterionResult criterion_theory_vs_numerics(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  Check c;
  const double delta = 0.01;
  for (int d_env : {2, 4}) {
    UniverseSpec spec{2, d_env, 64, InitialState::hadamard, {}};
    RedundancyReport report =
        ensemble_redundancy(spec, delta, 32, 16, RngStream(seed, 900 + d_env), workers);
    double theory = approx_specific_redundancy(2, d_env, delta, std::log(2.0)).value;
    double rel = std::abs(report.specific_r - theory) / theory;
    c.require(rel <= 0.20, "D_S=2, D_E=" + std::to_string(d_env) + ": numeric " +
                               num(report.specific_r) + " vs theory " + num(theory) +
                               " off by " + num(100.0 * rel) + "%");
    c.note("D_S=2,D_E=" + std::to_string(d_env) + ": numeric " + num(report.specific_r) +
           " / theory " + num(theory));
  }
  {
    UniverseSpec spec{16, 4, 64, InitialState::hadamard, {}};
    RedundancyReport report =
        ensemble_redundancy(spec, delta, 16, 8, RngStream(seed, 916), workers);
    double theory = approx_specific_redundancy(16, 4, delta, std::log(16.0)).value;
    c.require(theory > report.specific_r,
              "D_S=16: theory " + num(theory) + " does not exceed numeric " +
                  num(report.specific_r));
    c.note("D_S=16: numeric " + num(report.specific_r) + " / theory " + num(theory));
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {9, "Specific redundancy: theory vs numerics", c.ok, c.detail, elapsed};
}

// 10. Weak dependence of redundancy on the information deficit.
CriterionResult criterion_delta_insensitivity(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  UniverseSpec spec{5, 5, 64, InitialState::hadamard, {}};
  double lo = 0.0, hi = 0.0;
  bool first = true;
  std::string values;
  for (double delta : {0.02, 0.05, 0.1, 0.17, 0.25}) {
    RedundancyReport report =
        ensemble_redundancy(spec, delta, 16, 16, RngStream(seed, 1000), workers);
    double r = report.r_delta;
    if (first) {
      lo = hi = r;
      first = false;
    } else {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    values += (values.empty() ? "" : ", ") + num(r);
  }
  Check c;
  c.require(lo > 0.0 && hi / lo < 2.0,
            "R_delta range [" + num(lo) + ", " + num(hi) + "] spans factor " +
                num(lo > 0 ? hi / lo : 0.0));
  c.note("R_delta over delta in [0.02, 0.25]: " + values);
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {10, "Delta-insensitivity of R_delta (D_S=D_E=5, N=64)", c.ok, c.detail, elapsed};
}

// 11. "Thermal" initial states behave like a Hadamard system of equal entropy.
CriterionResult criterion_thermal_equivalence(std::uint64_t seed, unsigned workers) {
  auto start = std::chrono::steady_clock::now();
  Check c;

  // Exact geometric-spectrum entropy, bits.
  SystemAmplitudes thermal = thermal_amplitudes(16);
  std::vector<double> lambda = decohered_spectrum(thermal);
  double code_bits = entropy_of_spectrum(lambda) / std::numbers::ln2;
  long double z = 0.0L;
  for (int n = 0; n < 16; ++n) {
    z += std::pow(2.0L, static_cast<long double>(-n));
  }
  long double oracle = 0.0L;
  for (int n = 0; n < 16; ++n) {
    long double l = std::pow(2.0L, static_cast<long double>(-n)) / z;
    oracle -= l * std::log2(l);
  }
  c.require(std::abs(code_bits - static_cast<double>(oracle)) <= 1e-3,
            "thermal entropy " + num(code_bits) + " bits vs exact " +
                num(static_cast<double>(oracle)));
  c.require(code_bits < 2.0, "thermal entropy " + num(code_bits) + " not below 2 bits");

  const int n_env = 16;
  const int n_states = 320;
  const int n_frags = 16;
  for (int d_env : {2, 3}) {
    UniverseSpec thermal16{16, d_env, n_env, InitialState::thermal, {}};
    UniverseSpec hadamard4{4, d_env, n_env, InitialState::hadamard, {}};
    Pip a = exact_pip(thermal16, n_states, n_frags, RngStream(seed, 1100 + d_env), workers);
    Pip b = exact_pip(hadamard4, n_states, n_frags, RngStream(seed, 1110 + d_env), workers);
    // Plateau region: where the curve is actually flat, i.e. the
    // closed-form deviation from H0 at both ends stays below 5% of H0.
    const double h0 = std::log(4.0);
    const double amp = 0.5 * (std::exp(h0) - 1.0);
    double worst = 0.0;
    int m_lo = 0, m_hi = 0;
    for (int m = 1; m < n_env; ++m) {
      double dev = amp * (std::pow(static_cast<double>(d_env), -m) +
                          std::pow(static_cast<double>(d_env), -(n_env - m)));
      if (dev <= 0.05 * h0) {
        if (m_lo == 0) {
          m_lo = m;
        }
        m_hi = m;
        worst = std::max(worst, std::abs(a.i_mean[m] - b.i_mean[m]));
      }
    }
    c.require(worst <= 0.05, "D_E=" + std::to_string(d_env) + ": plateau gap " + num(worst) +
                                 " > 0.05 nats on m=[" + std::to_string(m_lo) + "," +
                                 std::to_string(m_hi) + "]");
    c.note("D_E=" + std::to_string(d_env) + ": max plateau gap " + num(worst));
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {11, "Thermal-state equivalence (D_S=16 thermal vs D_S=4 Hadamard)", c.ok, c.detail,
          elapsed};
}

// 12. Leading-order entropy correction error shrinks at least cubically.
CriterionResult criterion_entropy_expansion() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  for (int d : {2, 4}) {
    SystemAmplitudes amps = hadamard_amplitudes(d);
    std::vector<double> spectrum = decohered_spectrum(amps);
    std::vector<double> errs;
    for (double gamma : {0.1, 0.05, 0.025}) {
      // Imaginary off-diagonal overlaps: the parity of the construction
      // pushes the first neglected correction past third order.
      ComplexMatrix g(d, d);
      for (int i = 0; i < d; ++i) {
        g(i, i) = 1.0;
        for (int j = i + 1; j < d; ++j) {
          g(i, j) = Complex{0.0, gamma};
          g(j, i) = Complex{0.0, -gamma};
        }
      }
      ComplexMatrix rho(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          rho(i, j) = amps.s[i] * std::conj(amps.s[j]) * g(i, j);
        }
      }
      double exact =
          entropy_of_spectrum(eigen_hermitian(rho, false).values) - std::log(double(d));
      double approx = entropy_correction_leading(spectrum, g);
      errs.push_back(std::abs(exact - approx));
    }
    for (std::size_t i = 1; i < errs.size(); ++i) {
      c.require(errs[i] <= errs[i - 1] / 8.0 + 1e-14,
                "D_S=" + std::to_string(d) + ": error " + num(errs[i - 1]) + " -> " +
                    num(errs[i]) + " shrank by less than 8x");
    }
    c.note("D_S=" + std::to_string(d) + " errors: " + num(errs[0]) + ", " + num(errs[1]) +
           ", " + num(errs[2]));
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {12, "Entropy-expansion error scaling (cubic or better)", c.ok, c.detail, elapsed};
}

// 13. The h series sums to the support dimension for flat spectra.
CriterionResult criterion_h_series() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  for (int d : {2, 4, 16, 64}) {
    std::vector<double> uniform(d, 1.0 / d);
    double h = h_series(uniform);
    c.require(std::abs(h - d) <= 1e-8,
              "h(uniform " + std::to_string(d) + ") = " + num(h) + " off by " +
                  num(std::abs(h - d)));
  }
  if (c.ok) {
    c.note("h(uniform D) = D within 1e-8 for D in {2,4,16,64}");
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {13, "h-series flat-spectrum identity", c.ok, c.detail, elapsed};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, unsigned workers) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_page_agreement(seed, workers));
  results.push_back(criterion_encoding_profile());
  results.push_back(criterion_symmetry_theorem(seed, workers));
  results.push_back(criterion_oracle_equivalence(seed, workers));
  results.push_back(criterion_ghz(seed));
  results.push_back(criterion_classical_plateau(seed, workers));
  results.push_back(criterion_dfactor_table(seed, workers));
  results.push_back(criterion_redundancy_scaling(seed, workers));
  results.push_back(criterion_theory_vs_numerics(seed, workers));
  results.push_back(criterion_delta_insensitivity(seed, workers));
  results.push_back(criterion_thermal_equivalence(seed, workers));
  results.push_back(criterion_entropy_expansion());
  results.push_back(criterion_h_series());
  return results;
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
  std::string out;
  int passed = 0;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof(line), "[%s] %2d. %-58s (%.2fs)\n",
                  r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
    out += line;
    if (!r.detail.empty()) {
      out += "       " + r.detail + "\n";
    }
    if (r.passed) {
      ++passed;
    }
  }
  char summary[128];
  std::snprintf(summary, sizeof(summary), "%d/%zu criteria passed\n", passed, results.size());
  out += summary;
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) {
      return false;
    }
  }
  return true;
}

}  // namespace qdarwin
