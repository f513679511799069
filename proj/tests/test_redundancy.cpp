#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qdarwin/haar_ensemble.hpp"
#include "qdarwin/io.hpp"
#include "qdarwin/redundancy.hpp"

using namespace qdarwin;

TEST_CASE("sufficient threshold") {
  double h = std::numbers::ln2;
  CHECK(sufficient_threshold(h, 0.0) == h);
  CHECK(sufficient_threshold(h, 0.1) == doctest::Approx(0.9 * h).epsilon(1e-15));
  CHECK(sufficient_threshold(h, 0.999) == doctest::Approx(0.001 * h).epsilon(1e-9));
  CHECK_THROWS_AS(sufficient_threshold(h, 1.0), std::invalid_argument);
}

TEST_CASE("n_delta: ghz yields one fragment per subenvironment") {
  UniverseSpec spec{2, 2, 12, InitialState::ghz, {}};
  BranchingState ghz = ghz_branching_state(spec);
  for (double delta : {0.01, 0.1, 0.25, 0.9}) {
    NDeltaResult res = n_delta_detailed(ghz, delta, 8, RngStream(1, 1));
    CHECK(res.mean_count == 12.0);
    CHECK(res.mean_first_size == 1.0);
    for (const auto& packing : res.packings) {
      CHECK(packing.fragments.size() == 12);
      for (const auto& f : packing.fragments) {
        CHECK(f.members.size() == 1);
      }
    }
  }
}

TEST_CASE("n_delta under the total-information convention needs the whole environment") {
  UniverseSpec spec{2, 2, 8, InitialState::ghz, {}};
  BranchingState ghz = ghz_branching_state(spec);
  // Singles provide H_S < (1 - 0.1) * 2 H_S, so only the final full
  // accumulation closes a fragment.
  double count = n_delta(ghz, 0.1, 8, RngStream(2, 2),
                         ThresholdConvention::total_mutual_information);
  CHECK(count == 1.0);
}

TEST_CASE("greedy packing: disjoint, sufficient, and matching a re-implementation") {
  UniverseSpec spec{2, 2, 16, InitialState::hadamard, {}};
  RngStream sample_rng(3, 3);
  BranchingState state = sample_branching_state(spec, sample_rng);
  const double delta = 0.1;
  const int n_perms = 8;
  RngStream greedy_rng(4, 4);
  NDeltaResult res = n_delta_detailed(state, delta, n_perms, greedy_rng);

  double h_s = system_entropy(state);
  double threshold = sufficient_threshold(h_s, delta);
  CHECK(res.threshold_nats == doctest::Approx(threshold).epsilon(1e-15));

  for (const auto& packing : res.packings) {
    // pairwise disjoint
    std::vector<int> seen;
    for (const auto& f : packing.fragments) {
      for (int k : f.members) {
        CHECK(std::find(seen.begin(), seen.end(), k) == seen.end());
        seen.push_back(k);
      }
      // each emitted fragment is sufficient on its own
      CHECK(mutual_information(state, f) >= threshold - 1e-12);
    }
  }

  // Independent greedy re-implementation: same permutation stream, but
  // mutual information recomputed through the reduced-density API.
  for (int p = 0; p < n_perms; ++p) {
    RngStream stream = greedy_rng.substream(p);
    std::vector<int> perm(16);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i < 15; ++i) {
      int j = i + static_cast<int>(stream.next_double() * (16 - i));
      j = std::min(j, 15);
      std::swap(perm[i], perm[j]);
    }
    int count = 0;
    int first_size = 0;
    std::vector<int> members;
    for (int i = 0; i < 16; ++i) {
      members.push_back(perm[i]);
      Fragment f = make_fragment(members, 16);
      if (mutual_information(state, f) >= threshold) {
        ++count;
        if (first_size == 0) {
          first_size = static_cast<int>(members.size());
        }
        members.clear();
      }
    }
    CHECK(static_cast<int>(res.packings[p].fragments.size()) == count);
    if (first_size > 0) {
      CHECK(res.packings[p].first_sufficient_size == first_size);
    }
  }
}

TEST_CASE("greedy count is monotone in delta for the same permutations") {
  UniverseSpec spec{2, 2, 12, InitialState::hadamard, {}};
  RngStream sample_rng(5, 5);
  BranchingState state = sample_branching_state(spec, sample_rng);
  double prev = -1.0;
  for (double delta : {0.02, 0.05, 0.1, 0.2, 0.4}) {
    double count = n_delta(state, delta, 16, RngStream(6, 6));
    if (prev >= 0.0) {
      CHECK(count >= prev);
    }
    prev = count;
  }
}

TEST_CASE("r_delta report: ghz value and internal consistency") {
  UniverseSpec spec{2, 2, 16, InitialState::ghz, {}};
  BranchingState ghz = ghz_branching_state(spec);
  RedundancyReport report = r_delta(ghz, 0.1, 16, RngStream(7, 7));
  CHECK(report.n_delta_mean == 16.0);
  CHECK(report.r_delta == doctest::Approx(13.4).epsilon(1e-12));
  CHECK(report.m_delta_mean == 1.0);
  CHECK(report.specific_r == doctest::Approx(0.9).epsilon(1e-12));
  // bit-for-bit consistency with the count from the same run
  CHECK(report.r_delta == (1.0 - report.delta) * report.n_delta_mean - 1.0);
}

TEST_CASE("ensemble report keeps the r_delta identity") {
  UniverseSpec spec{2, 2, 10, InitialState::hadamard, {}};
  RedundancyReport report = ensemble_redundancy(spec, 0.1, 12, 8, RngStream(8, 8));
  CHECK(report.r_delta == (1.0 - report.delta) * report.n_delta_mean - 1.0);
  CHECK(report.specific_r >= 0.0);
  CHECK(report.n_delta_mean > 1.0);
}

TEST_CASE("specific redundancy sweep: ghz family has slope 1 - delta") {
  UniverseSpec spec{2, 2, 8, InitialState::ghz, {}};
  SpecificRedundancySweep sweep =
      specific_redundancy_sweep(spec, {8, 16, 32}, 0.1, 2, 4, RngStream(9, 9));
  CHECK(sweep.slope == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(sweep.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i < sweep.n_env_values.size(); ++i) {
    double expected = 0.9 * sweep.n_env_values[i] - 1.0;
    CHECK(sweep.r_delta_mean[i] == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(specific_redundancy_sweep(spec, {8, 16}, 0.1, 1, 1, RngStream(1, 1)),
                  std::invalid_argument);
}

TEST_CASE("branching ensembles develop linear redundancy growth") {
  UniverseSpec spec{2, 2, 8, InitialState::hadamard, {}};
  SpecificRedundancySweep sweep =
      specific_redundancy_sweep(spec, {8, 16, 32}, 0.1, 16, 8, RngStream(10, 10));
  CHECK(sweep.slope > 0.0);
  CHECK(sweep.r_squared > 0.95);
}

TEST_CASE("scaled pip: endpoints and midpoint") {
  UniverseSpec spec{2, 2, 12, InitialState::hadamard, {}};
  Pip pip = haar_pip_analytic(spec);
  ScaledPip spip = scaled_pip(pip);
  CHECK(spip.f_cap.front() == 0.0);
  CHECK(spip.f_i.front() == 0.0);
  CHECK(spip.f_cap.back() == 1.0);
  CHECK(spip.f_i.back() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spip.f_cap[6] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(spip.f_i[6] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("information decomposition: ghz, encoding, and loose deficits") {
  UniverseSpec gspec{2, 2, 8, InitialState::ghz, {}};
  Pip ghz_pip = exact_pip(gspec, 2, 4, RngStream(11, 11));
  InfoDecomposition ghz = decompose_information(ghz_pip, 0.1);
  CHECK(ghz.i_redundant == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(ghz.i_quantum == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  CHECK(std::abs(ghz.i_nonredundant) < 1e-9);
  CHECK(std::abs(ghz.i_redundant + ghz.i_nonredundant + ghz.i_quantum -
                 2.0 * ghz_pip.h_sys) < 1e-6);

  // uniform-ensemble curve stores nothing redundantly
  UniverseSpec uspec{2, 2, 12, InitialState::hadamard, {}};
  Pip uniform = haar_pip_analytic(uspec);
  InfoDecomposition enc = decompose_information(uniform, 0.1);
  CHECK(enc.i_redundant == 0.0);
  CHECK(std::abs(enc.i_redundant + enc.i_nonredundant + enc.i_quantum -
                 2.0 * uniform.h_sys) < 1e-6);

  // delta -> 1 collapses the redundant part toward I(1)
  InfoDecomposition loose = decompose_information(ghz_pip, 0.999);
  CHECK(loose.i_redundant == doctest::Approx(ghz_pip.i_mean[1]).epsilon(1e-12));
}

TEST_CASE("csv emission: schemas, flooring, units") {
  // empty curve gives a header-only file
  CHECK(pip_csv(Pip{}, Units::nats) == "m,i_mean,i_std,n_samples,units\n");

  // negative raw R_delta is floored to zero for display only
  RedundancyReport report;
  report.delta = 0.1;
  report.n_delta_mean = 0.5;
  report.r_delta = (1.0 - 0.1) * 0.5 - 1.0;  // -0.55
  report.m_delta_mean = 9.0;
  report.specific_r = 0.1;
  report.samples = 4;
  CHECK(report.r_delta < 0.0);
  std::string csv = redundancy_csv({report});
  CHECK(csv.find(",0,9,") != std::string::npos);
  CHECK(csv.rfind("delta,n_delta,r_delta,m_delta,specific_r,samples\n", 0) == 0);

  // bits are nats / ln 2 at presentation time
  Pip pip;
  pip.n_env = 1;
  pip.i_mean = {0.0, std::numbers::ln2};
  pip.i_std = {0.0, 0.0};
  pip.samples = {1, 1};
  pip.h_sys = std::numbers::ln2;
  std::string bits = pip_csv(pip, Units::bits);
  CHECK(bits.find("1,1,0,1,bits") != std::string::npos);
}

TEST_CASE("systems larger than their environment show no redundancy") {
  // 16-dimensional system, five qubit subenvironments: the environment is
  // barely big enough to decohere the system. Only a more-than-half
  // fragment carries sufficient information, the greedy packing closes one
  // fragment, and the redundancy bound goes non-positive. (Even N is the
  // boundary case where both halves carry ~H_S and N_delta = 2.)
  UniverseSpec spec{16, 2, 5, InitialState::hadamard, {}};
  RedundancyReport report = ensemble_redundancy(spec, 0.1, 6, 8, RngStream(13, 13));
  CHECK(report.r_delta <= 0.0);  // raw value kept; display floors at zero
}

TEST_CASE("redundancy is deterministic across worker counts") {
  UniverseSpec spec{3, 3, 12, InitialState::hadamard, {}};
  RedundancyReport serial = ensemble_redundancy(spec, 0.1, 8, 8, RngStream(12, 12), 1);
  RedundancyReport parallel = ensemble_redundancy(spec, 0.1, 8, 8, RngStream(12, 12), 4);
  CHECK(serial.n_delta_mean == parallel.n_delta_mean);
  CHECK(serial.r_delta == parallel.r_delta);
  CHECK(serial.m_delta_mean == parallel.m_delta_mean);
}
