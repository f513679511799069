#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdarwin/qmath.hpp"
#include "qdarwin/theory.hpp"

using namespace qdarwin;

namespace {

// Brute-force evaluation of the double series, no anti-diagonal logic.
double h_series_bruteforce(const std::vector<double>& spectrum, int terms) {
  std::vector<double> t(terms);
  for (int q = 0; q < terms; ++q) {
    double sum = 0.0;
    for (double lambda : spectrum) {
      if (lambda > 0.0) {
        sum += lambda * std::pow(1.0 - lambda, q);
      }
    }
    t[q] = sum;
  }
  double total = 0.0;
  for (int n = 0; n < terms; ++n) {
    for (int p = 0; p < terms; ++p) {
      total += t[n] * t[p] / (n + p + 1);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("d-factor statistics reproduce the closed-form rationals") {
  struct Row {
    int d;
    double mean;
    double std;
  };
  const Row rows[] = {
      {2, 0.5, 0.5},
      {3, 0.75, std::sqrt(5.0) / 4.0},
      {4, 11.0 / 12.0, 7.0 / 12.0},
      {5, 25.0 / 24.0, std::sqrt(205.0) / 24.0},
      {6, 137.0 / 120.0, std::sqrt(5269.0) / 120.0},
      {8, 363.0 / 280.0, std::sqrt(266681.0) / 840.0},
  };
  for (const Row& row : rows) {
    DFactorStats stats = d_factor_stats(row.d);
    CHECK(std::abs(stats.mean_d - row.mean) < 1e-12);
    CHECK(std::abs(stats.std_d - row.std) < 1e-12);
  }
  CHECK_THROWS_AS(d_factor_stats(1), std::invalid_argument);
}

TEST_CASE("sampled d-factors match their analytic moments") {
  RngStream rng(2025, 1);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += sample_d(4, rng);
  }
  double mean = sum / n;
  DFactorStats stats = d_factor_stats(4);
  double se = stats.std_d / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - 11.0 / 12.0) < 3.0 * se);
}

TEST_CASE("overlap densities integrate to one and transform consistently") {
  // Simpson quadrature of p(gamma) over [0, 1].
  for (int d : {2, 3, 5, 8}) {
    const int steps = 2000;
    double h = 1.0 / steps;
    double integral = pdf_gamma(0.0, d) + pdf_gamma(1.0, d);
    for (int i = 1; i < steps; ++i) {
      integral += (i % 2 == 1 ? 4.0 : 2.0) * pdf_gamma(i * h, d);
    }
    integral *= h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-8);
  }
  // p(d) over [0, 40]; the tail beyond is ~e^{-80}.
  for (int d_env : {2, 4, 6}) {
    const int steps = 40000;
    double h = 40.0 / steps;
    double integral = pdf_d(0.0, d_env) + pdf_d(40.0, d_env);
    for (int i = 1; i < steps; ++i) {
      integral += (i % 2 == 1 ? 4.0 : 2.0) * pdf_d(i * h, d_env);
    }
    integral *= h / 3.0;
    CHECK(std::abs(integral - 1.0) < 1e-8);
  }
  // p(d) = p(gamma(d)) |dgamma/dd| with gamma = e^{-d}.
  for (int d_env : {2, 3, 6}) {
    for (double d = 0.05; d < 5.0; d += 0.13) {
      double gamma = std::exp(-d);
      CHECK(std::abs(pdf_d(d, d_env) - gamma * pdf_gamma(gamma, d_env)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(pdf_gamma(1.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(pdf_d(-0.1, 3), std::invalid_argument);
}

TEST_CASE("haar overlaps from the sampler follow pdf_gamma (KS at 1%)") {
  RngStream rng(77, 3);
  const int dim = 5;
  const int n = 4000;
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) {
    PureState a = haar_state(dim, rng);
    PureState b = haar_state(dim, rng);
    Complex overlap = 0.0;
    for (int k = 0; k < dim; ++k) {
      overlap += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    }
    samples[i] = std::abs(overlap);
  }
  std::sort(samples.begin(), samples.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    // CDF from pdf_gamma: F(g) = 1 - (1 - g^2)^(D-1).
    double f = 1.0 - std::pow(1.0 - samples[i] * samples[i], dim - 1);
    ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
  }
  CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("h series: flat spectra, pure states, and the brute-force oracle") {
  for (int d : {2, 4, 16, 64}) {
    std::vector<double> uniform(d, 1.0 / d);
    CHECK(std::abs(h_series(uniform) - d) < 1e-8);
  }
  CHECK(h_series({1.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h_series({1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> spectrum{0.75, 0.25};
  double via_series = h_series(spectrum, 1e-12);
  double via_brute = h_series_bruteforce(spectrum, 400);
  CHECK(std::abs(via_series - via_brute) < 1e-8);
  // effective-dimension approximation: within 15% of e^{H0}
  double h0 = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
  CHECK(std::abs(via_series - std::exp(h0)) / std::exp(h0) < 0.15);

  CHECK_THROWS_AS(h_series({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(h_series({0.5, 0.5}, -1.0), std::invalid_argument);
}

TEST_CASE("approximate entropy formula") {
  CHECK(approx_entropy(std::numbers::ln2, 0.0) == std::numbers::ln2);
  CHECK(approx_entropy(std::numbers::ln2, 0.01) ==
        doctest::Approx(std::numbers::ln2 - 0.005).epsilon(1e-12));
  CHECK(approx_entropy(std::log(4.0), 0.02) ==
        doctest::Approx(std::log(4.0) - 0.03).epsilon(1e-12));

  // against the exact 2x2 entropy at |gamma| = 0.1: agreement to O(gamma^4)
  double gamma = 0.1;
  double exact = -(0.5 * (1 + gamma) * std::log(0.5 * (1 + gamma)) +
                   0.5 * (1 - gamma) * std::log(0.5 * (1 - gamma)));
  double approx = approx_entropy(std::numbers::ln2, gamma * gamma);
  CHECK(std::abs(exact - approx) < 1e-4);
  CHECK_THROWS_AS(approx_entropy(1.0, 2.0), std::invalid_argument);
}

TEST_CASE("closed-form pip: midpoint, endpoint, antisymmetry, validity") {
  UniverseSpec spec{2, 2, 16, InitialState::hadamard, {}};
  double h0 = std::numbers::ln2;
  ApproxPip curve = approx_pip(spec, h0);
  CHECK(curve.i_mean[8] == doctest::Approx(h0).epsilon(1e-15));
  double expected_end = h0 + 0.5 * (std::exp(h0) - 1.0) * (1.0 - std::pow(2.0, -16.0));
  CHECK(curve.i_mean[16] == doctest::Approx(expected_end).epsilon(1e-12));
  for (int m = 0; m <= 16; ++m) {
    CHECK(std::abs(curve.i_mean[m] + curve.i_mean[16 - m] - 2.0 * h0) < 1e-12);
    bool expected_valid = m * std::numbers::ln2 >= h0;
    CHECK(static_cast<bool>(curve.valid[m]) == expected_valid);
  }
}

TEST_CASE("mean fragment size and specific redundancy estimates") {
  // D_S=2, D_E=2, delta=0.1, H_S=ln2, worked by hand from the formula:
  // d_delta = -ln(0.2 ln 2)/2, mean_d = 1/2, var_d = 1/4.
  double d_delta = -0.5 * std::log(2.0 * 0.1 * std::numbers::ln2);
  double by_hand = d_delta / 0.5 + 0.25 / (2.0 * 0.25) + 0.5;
  MeanFragmentSize m = mean_fragment_size(2, 2, 0.1, std::numbers::ln2);
  CHECK_FALSE(m.single_subenvironment_sufficient);
  CHECK(m.value == doctest::Approx(by_hand).epsilon(1e-12));
  CHECK(m.value == doctest::Approx(2.9759).epsilon(1e-4));

  // delta -> 0 diverges logarithmically
  CHECK(mean_fragment_size(2, 2, 1e-6, std::numbers::ln2).value >
        mean_fragment_size(2, 2, 1e-3, std::numbers::ln2).value);
  // larger environments need smaller fragments
  CHECK(mean_fragment_size(2, 8, 0.1, std::numbers::ln2).value <
        mean_fragment_size(2, 2, 0.1, std::numbers::ln2).value);
  // degenerate threshold: a single subenvironment suffices
  MeanFragmentSize degenerate = mean_fragment_size(2, 2, 0.9, std::numbers::ln2);
  CHECK(degenerate.single_subenvironment_sufficient);
  CHECK(degenerate.value == 1.0);

  // algebraic identity r * m = (1 - delta)
  for (int d_sys : {2, 3, 5, 16}) {
    for (int d_env : {2, 4, 8}) {
      for (double delta : {0.01, 0.1, 0.25}) {
        double h = std::log(static_cast<double>(d_sys));
        MeanFragmentSize mm = mean_fragment_size(d_sys, d_env, delta, h);
        SpecificRedundancyEstimate rr = approx_specific_redundancy(d_sys, d_env, delta, h);
        if (!mm.single_subenvironment_sufficient) {
          CHECK(std::abs(rr.value * mm.value - (1.0 - delta)) < 1e-12);
        }
      }
    }
  }

  SpecificRedundancyEstimate r = approx_specific_redundancy(2, 2, 0.1, std::numbers::ln2);
  CHECK(r.value == doctest::Approx((1.0 - 0.1) / by_hand).epsilon(1e-12));
}

TEST_CASE("rule-of-thumb specific redundancy") {
  double r = thumbnail_specific_redundancy(2, 2, 0.01);
  CHECK(r == doctest::Approx(std::numbers::ln2 / (std::numbers::ln2 - std::log(0.01)))
                 .epsilon(1e-12));
  CHECK(r == doctest::Approx(0.1308).epsilon(1e-3));
  // grows with ln(D_E)
  CHECK(thumbnail_specific_redundancy(2, 8, 0.01) ==
        doctest::Approx(3.0 * r).epsilon(1e-12));
  // halving delta moves it only logarithmically: 1/r shifts by exactly
  // ln(2)/ln(D_E) = 1 here
  double r_half = thumbnail_specific_redundancy(2, 2, 0.005);
  CHECK(std::abs((1.0 / r_half - 1.0 / r) - 1.0) < 1e-9);
  CHECK(r / r_half < 1.2);
}

TEST_CASE("leading-order entropy correction against exact diagonalization") {
  // all off-diagonals zero: no correction
  ComplexMatrix zero_gamma = ComplexMatrix::identity(3);
  CHECK(entropy_correction_leading({1.0 / 3, 1.0 / 3, 1.0 / 3}, zero_gamma) == 0.0);

  // D_S=2, |gamma| = 0.05, flat spectrum: matches exact within 1e-5 nats
  auto exact_shift = [](double gamma) {
    double lp = 0.5 * (1.0 + gamma);
    double lm = 0.5 * (1.0 - gamma);
    return -(lp * std::log(lp) + lm * std::log(lm)) - std::numbers::ln2;
  };
  auto gamma_matrix = [](double gamma) {
    ComplexMatrix g = ComplexMatrix::identity(2);
    g(0, 1) = gamma;
    g(1, 0) = gamma;
    return g;
  };
  double approx = entropy_correction_leading({0.5, 0.5}, gamma_matrix(0.05));
  CHECK(std::abs(approx - exact_shift(0.05)) < 1e-5);

  // halving gamma cuts the residual error by at least 8x
  double prev_err = -1.0;
  for (double gamma : {0.1, 0.05, 0.025}) {
    double err = std::abs(entropy_correction_leading({0.5, 0.5}, gamma_matrix(gamma)) -
                          exact_shift(gamma));
    if (prev_err > 0.0) {
      CHECK(err <= prev_err / 8.0 + 1e-14);
    }
    prev_err = err;
  }
}
