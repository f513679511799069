#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdarwin/haar_ensemble.hpp"
#include "qdarwin/qmath.hpp"

using namespace qdarwin;

TEST_CASE("page formula: hand-derived harmonic sums") {
  for (std::uint64_t n : {1ULL, 2ULL, 7ULL, 100ULL}) {
    CHECK(page_mean_entropy(1, n) == doctest::Approx(0.0).epsilon(1e-15));
  }
  // H(2,2) = 1/3 + 1/4 - 1/4 = 1/3
  CHECK(std::abs(page_mean_entropy(2, 2) - 1.0 / 3.0) < 1e-12);
  // H(2,4) = 1/5 + 1/6 + 1/7
  double expected = 1.0 / 5.0 + 1.0 / 6.0 + 1.0 / 7.0;
  CHECK(std::abs(page_mean_entropy(2, 4) - expected) < 1e-12);
  CHECK(std::abs(expected - 0.509524) < 1e-6);

  CHECK_THROWS_AS(page_mean_entropy(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(page_mean_entropy(0, 2), std::invalid_argument);
}

TEST_CASE("page formula: digamma and harmonic paths agree to 1e-12") {
  const std::uint64_t ms[] = {2, 3, 5, 8, 16, 25, 31, 64, 100};
  for (std::uint64_t m : ms) {
    for (std::uint64_t n : {m, 2 * m, 10 * m, std::uint64_t{997}, std::uint64_t{9973}}) {
      if (n < m || m * n > 1000000ULL) {
        continue;
      }
      double a = page_mean_entropy(m, n);
      double b = page_mean_entropy_harmonic(m, n);
      CHECK(std::abs(a - b) < 1e-12);
      CHECK(a >= 0.0);
      CHECK(a <= std::log(static_cast<double>(m)) + 1e-9);
    }
  }
  // the full 1000x1000 corner
  CHECK(std::abs(page_mean_entropy(1000, 1000) - page_mean_entropy_harmonic(1000, 1000)) <
        1e-12);
}

TEST_CASE("page formula: log-domain path matches the machine-range path") {
  // 2^40 fits either way.
  HilbertDim big = hilbert_dim_pow(2, 40);
  CHECK(std::abs(page_mean_entropy_dim(hilbert_dim(7), big) -
                 page_mean_entropy(7, 1ULL << 40)) < 1e-12);
  // Beyond uint64: value unavailable, log form still finite and ~ln(m).
  HilbertDim huge = hilbert_dim_pow(3, 200);
  CHECK_FALSE(huge.has_value);
  double h = page_mean_entropy_dim(hilbert_dim(16), huge);
  CHECK(h == doctest::Approx(std::log(16.0)).epsilon(1e-12));
}

TEST_CASE("analytic haar pip: endpoints, small case, antisymmetry") {
  UniverseSpec spec{2, 2, 2, InitialState::hadamard, {}};
  Pip pip = haar_pip_analytic(spec);
  CHECK(pip.i_mean[0] == 0.0);
  // Three-term combination at m=1: every cut of the 8-dimensional universe
  // splits 2|4 or 4|2, so all terms reduce to H(2,4). Cross-checked against
  // Monte Carlo sampling below.
  double expected_m1 = page_mean_entropy(2, 4) + page_mean_entropy(2, 4) -
                       page_mean_entropy(2, 4);
  CHECK(std::abs(pip.i_mean[1] - expected_m1) < 1e-12);
  CHECK(std::abs(pip.i_mean[2] - 2.0 * page_mean_entropy(2, 4)) < 1e-12);

  UniverseSpec wide{2, 2, 12, InitialState::hadamard, {}};
  Pip p12 = haar_pip_analytic(wide);
  for (int m = 0; m <= 12; ++m) {
    CHECK(std::abs(p12.i_mean[m] + p12.i_mean[12 - m] - 2.0 * p12.h_sys) < 1e-9);
  }
  // encoding: negligible information from small fragments
  for (int m = 0; m <= 3; ++m) {
    CHECK(p12.i_mean[m] < 0.05 * p12.h_sys);
  }
  // monotone non-decreasing (analytic curve is exact, no noise allowance needed)
  for (int m = 1; m <= 12; ++m) {
    CHECK(p12.i_mean[m] >= p12.i_mean[m - 1] - 1e-12);
  }
}

TEST_CASE("analytic haar pip works far beyond machine-integer dimensions") {
  UniverseSpec spec{16, 2, 400, InitialState::hadamard, {}};
  Pip pip = haar_pip_analytic(spec);
  CHECK(pip.h_sys == doctest::Approx(std::log(16.0)).epsilon(1e-10));
  CHECK(std::abs(pip.i_mean[200] - pip.h_sys) < 1e-9);
  for (int m = 0; m <= 400; m += 50) {
    CHECK(std::abs(pip.i_mean[m] + pip.i_mean[400 - m] - 2.0 * pip.h_sys) < 1e-9);
  }
}

TEST_CASE("equivalent environments: same total dimension gives the same scaled curve") {
  UniverseSpec a{16, 2, 24, InitialState::hadamard, {}};
  UniverseSpec b{16, 4, 12, InitialState::hadamard, {}};
  UniverseSpec c{16, 16, 6, InitialState::hadamard, {}};
  Pip pa = haar_pip_analytic(a);
  Pip pb = haar_pip_analytic(b);
  Pip pc = haar_pip_analytic(c);
  // Common capture fractions k/6.
  for (int k = 0; k <= 6; ++k) {
    double fa = pa.i_mean[4 * k] / (2.0 * pa.h_sys);
    double fb = pb.i_mean[2 * k] / (2.0 * pb.h_sys);
    double fc = pc.i_mean[k] / (2.0 * pc.h_sys);
    CHECK(std::abs(fa - fb) < 1e-6);
    CHECK(std::abs(fa - fc) < 1e-6);
  }
}

TEST_CASE("monte carlo haar pip agrees with the closed form") {
  UniverseSpec spec{2, 2, 4, InitialState::hadamard, {}};
  const int n_samples = 500;
  Pip mc = haar_pip_montecarlo(spec, n_samples, RngStream(2024, 31));
  Pip exact = haar_pip_analytic(spec);
  CHECK(mc.i_mean[0] == 0.0);
  for (int m = 0; m <= 4; ++m) {
    double se = mc.i_std[m] / std::sqrt(static_cast<double>(n_samples));
    CHECK(std::abs(mc.i_mean[m] - exact.i_mean[m]) <= 4.0 * se + 1e-12);
  }
  // whole environment: I = 2 H_S sample mean
  CHECK(std::abs(mc.i_mean[4] - 2.0 * mc.h_sys) < 1e-12);
  // complementary sizes sum to twice the plateau reference
  for (int m = 1; m < 4; ++m) {
    double se = std::hypot(mc.i_std[m], mc.i_std[4 - m]) /
                std::sqrt(static_cast<double>(n_samples));
    CHECK(std::abs(mc.i_mean[m] + mc.i_mean[4 - m] - 2.0 * exact.h_sys) <= 4.0 * se + 1e-9);
  }
  // non-decreasing within noise
  for (int m = 1; m <= 4; ++m) {
    double se = std::hypot(mc.i_std[m], mc.i_std[m - 1]) /
                std::sqrt(static_cast<double>(n_samples));
    CHECK(mc.i_mean[m] >= mc.i_mean[m - 1] - 3.0 * se - 1e-12);
  }
}

TEST_CASE("monte carlo pip: any fixed fragment is representative") {
  // With N=4, m=2: contiguous membership {1,2} vs the scattered {2,4}.
  UniverseSpec spec{2, 2, 4, InitialState::hadamard, {}};
  const int n = 400;
  std::vector<int> dims = factor_dimensions(spec);
  double sum_a = 0.0, sum_b = 0.0, sq_a = 0.0, sq_b = 0.0;
  RngStream base(500, 77);
  for (int i = 0; i < n; ++i) {
    RngStream rng = base.substream(i);
    PureState psi = haar_state(32, rng);
    double h_s = entropy_of_bipartite_cut(psi, dims, {0});
    double ia = h_s + entropy_of_bipartite_cut(psi, dims, {1, 2}) -
                entropy_of_bipartite_cut(psi, dims, {0, 1, 2});
    double ib = h_s + entropy_of_bipartite_cut(psi, dims, {2, 4}) -
                entropy_of_bipartite_cut(psi, dims, {0, 2, 4});
    sum_a += ia;
    sum_b += ib;
    sq_a += ia * ia;
    sq_b += ib * ib;
  }
  double mean_a = sum_a / n, mean_b = sum_b / n;
  double var_a = sq_a / n - mean_a * mean_a;
  double var_b = sq_b / n - mean_b * mean_b;
  double se = std::sqrt((var_a + var_b) / n);
  CHECK(std::abs(mean_a - mean_b) <= 4.0 * se + 1e-12);
}

TEST_CASE("monte carlo with a single subenvironment: I(1) is twice H_S") {
  UniverseSpec spec{2, 2, 1, InitialState::hadamard, {}};
  Pip mc = haar_pip_montecarlo(spec, 100, RngStream(303, 9));
  CHECK(std::abs(mc.i_mean[1] - 2.0 * mc.h_sys) < 1e-12);
}

TEST_CASE("monte carlo guard rejects oversized universes") {
  UniverseSpec spec{2, 2, 20, InitialState::hadamard, {}};
  CHECK_THROWS_AS(haar_pip_montecarlo(spec, 10, RngStream(1, 1)), DeskScaleError);
}
