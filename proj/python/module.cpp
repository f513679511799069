#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdarwin/branching.hpp"
#include "qdarwin/haar_ensemble.hpp"
#include "qdarwin/qmath.hpp"
#include "qdarwin/redundancy.hpp"
#include "qdarwin/theory.hpp"
#include "qdarwin/validate.hpp"

namespace py = pybind11;
using namespace qdarwin;

namespace {

UniverseSpec make_spec(int d_sys, int d_env, int n_env, const std::string& initial_state) {
  UniverseSpec spec{d_sys, d_env, n_env, initial_state_from_string(initial_state), {}};
  validate_universe_spec(spec);
  return spec;
}

DensityMatrix density_from_rows(const std::vector<std::vector<Complex>>& rows) {
  int n = static_cast<int>(rows.size());
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) {
      throw std::invalid_argument("matrix rows must all have the same length");
    }
    for (int c = 0; c < n; ++c) {
      m(r, c) = rows[r][c];
    }
  }
  return DensityMatrix(std::move(m));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulation toolkit for redundant information storage in decoherence";

  py::register_exception<DeskScaleError>(m, "DeskScaleError");
  py::register_exception<NumericalError>(m, "NumericalError");

  py::class_<Pip>(m, "Pip")
      .def_readonly("n_env", &Pip::n_env)
      .def_readonly("i_mean", &Pip::i_mean)
      .def_readonly("i_std", &Pip::i_std)
      .def_readonly("samples", &Pip::samples)
      .def_readonly("h_sys", &Pip::h_sys)
      .def("__repr__", [](const Pip& p) {
        return "Pip(n_env=" + std::to_string(p.n_env) +
               ", h_sys=" + std::to_string(p.h_sys) + ")";
      });

  py::class_<ScaledPip>(m, "ScaledPip")
      .def_readonly("f_cap", &ScaledPip::f_cap)
      .def_readonly("f_i", &ScaledPip::f_i)
      .def_readonly("f_i_std", &ScaledPip::f_i_std)
      .def_readonly("samples", &ScaledPip::samples);

  py::class_<RedundancyReport>(m, "RedundancyReport")
      .def_readonly("delta", &RedundancyReport::delta)
      .def_readonly("n_delta_mean", &RedundancyReport::n_delta_mean)
      .def_readonly("r_delta", &RedundancyReport::r_delta)
      .def_readonly("m_delta_mean", &RedundancyReport::m_delta_mean)
      .def_readonly("specific_r", &RedundancyReport::specific_r)
      .def_readonly("threshold_nats", &RedundancyReport::threshold_nats)
      .def_readonly("samples", &RedundancyReport::samples)
      .def("__repr__", [](const RedundancyReport& r) {
        return "RedundancyReport(delta=" + std::to_string(r.delta) +
               ", r_delta=" + std::to_string(r.r_delta) + ")";
      });

  py::class_<SpecificRedundancySweep>(m, "SpecificRedundancySweep")
      .def_readonly("n_env_values", &SpecificRedundancySweep::n_env_values)
      .def_readonly("r_delta_mean", &SpecificRedundancySweep::r_delta_mean)
      .def_readonly("r_per_n", &SpecificRedundancySweep::r_per_n)
      .def_readonly("slope", &SpecificRedundancySweep::slope)
      .def_readonly("intercept", &SpecificRedundancySweep::intercept)
      .def_readonly("r_squared", &SpecificRedundancySweep::r_squared);

  py::class_<InfoDecomposition>(m, "InfoDecomposition")
      .def_readonly("i_redundant", &InfoDecomposition::i_redundant)
      .def_readonly("i_nonredundant", &InfoDecomposition::i_nonredundant)
      .def_readonly("i_quantum", &InfoDecomposition::i_quantum);

  py::class_<DFactorStats>(m, "DFactorStats")
      .def_readonly("d_env", &DFactorStats::d_env)
      .def_readonly("mean_d", &DFactorStats::mean_d)
      .def_readonly("std_d", &DFactorStats::std_d);

  py::class_<ApproxPip>(m, "ApproxPip")
      .def_readonly("n_env", &ApproxPip::n_env)
      .def_readonly("h0", &ApproxPip::h0)
      .def_readonly("i_mean", &ApproxPip::i_mean)
      .def_property_readonly("valid", [](const ApproxPip& p) {
        std::vector<bool> v(p.valid.begin(), p.valid.end());
        return v;
      });

  // qmath
  m.def("digamma", &digamma, py::arg("x"));
  m.def("trigamma", &trigamma, py::arg("x"));
  m.def(
      "von_neumann_entropy",
      [](const std::vector<std::vector<Complex>>& rows) {
        return von_neumann_entropy(density_from_rows(rows));
      },
      py::arg("matrix"), "Entropy in nats of a density matrix given as nested rows");
  m.def(
      "hermitian_eigenvalues",
      [](const std::vector<std::vector<Complex>>& rows) {
        return hermitian_eigenvalues(density_from_rows(rows));
      },
      py::arg("matrix"));

  // haar ensemble
  m.def("page_mean_entropy", &page_mean_entropy, py::arg("m"), py::arg("n"));
  m.def(
      "haar_pip_analytic",
      [](int d_sys, int d_env, int n_env) {
        return haar_pip_analytic(make_spec(d_sys, d_env, n_env, "hadamard"));
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env"));
  m.def(
      "haar_pip_montecarlo",
      [](int d_sys, int d_env, int n_env, int n_samples, std::uint64_t seed,
         unsigned workers) {
        return haar_pip_montecarlo(make_spec(d_sys, d_env, n_env, "hadamard"), n_samples,
                                   RngStream(seed, 1), workers);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env"), py::arg("n_samples"),
      py::arg("seed") = 424242, py::arg("workers") = 0);

  // branching
  m.def(
      "branch_pip",
      [](int d_sys, int d_env, int n_env, const std::string& initial_state, int n_states,
         int n_fragments, std::uint64_t seed, unsigned workers) {
        return exact_pip(make_spec(d_sys, d_env, n_env, initial_state), n_states,
                         n_fragments, RngStream(seed, 2), workers);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env"),
      py::arg("initial_state") = "hadamard", py::arg("n_states") = 200,
      py::arg("n_fragments") = 32, py::arg("seed") = 424242, py::arg("workers") = 0);

  // redundancy
  m.def(
      "redundancy_report",
      [](int d_sys, int d_env, int n_env, const std::string& initial_state, double delta,
         int n_states, int n_permutations, std::uint64_t seed, unsigned workers) {
        return ensemble_redundancy(make_spec(d_sys, d_env, n_env, initial_state), delta,
                                   n_states, n_permutations, RngStream(seed, 3), workers);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env"),
      py::arg("initial_state") = "hadamard", py::arg("delta") = 0.1,
      py::arg("n_states") = 200, py::arg("n_permutations") = 64,
      py::arg("seed") = 424242, py::arg("workers") = 0);
  m.def(
      "specific_redundancy_sweep",
      [](int d_sys, int d_env, const std::vector<int>& n_env_values,
         const std::string& initial_state, double delta, int n_states, int n_permutations,
         std::uint64_t seed, unsigned workers) {
        return specific_redundancy_sweep(make_spec(d_sys, d_env, n_env_values.front(), initial_state),
                                         n_env_values, delta, n_states, n_permutations,
                                         RngStream(seed, 4), workers);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env_values"),
      py::arg("initial_state") = "hadamard", py::arg("delta") = 0.1,
      py::arg("n_states") = 50, py::arg("n_permutations") = 16,
      py::arg("seed") = 424242, py::arg("workers") = 0);
  m.def("scaled_pip", &scaled_pip, py::arg("pip"));
  m.def("decompose_information", &decompose_information, py::arg("pip"), py::arg("delta"));
  m.def("sufficient_threshold", &sufficient_threshold, py::arg("h_sys"), py::arg("delta"));

  // theory
  m.def("d_factor_stats", &d_factor_stats, py::arg("d_env"));
  m.def("h_series", &h_series, py::arg("spectrum"), py::arg("tolerance") = 1e-10);
  m.def("approx_entropy", &approx_entropy, py::arg("h0"), py::arg("mean_gamma_sq"));
  m.def(
      "approx_pip",
      [](int d_sys, int d_env, int n_env, double h0) {
        return approx_pip(make_spec(d_sys, d_env, n_env, "hadamard"), h0);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("n_env"), py::arg("h0"));
  m.def("pdf_gamma", &pdf_gamma, py::arg("gamma"), py::arg("d_env"));
  m.def("pdf_d", &pdf_d, py::arg("d"), py::arg("d_env"));
  m.def(
      "mean_fragment_size",
      [](int d_sys, int d_env, double delta, double h_sys_nats) {
        MeanFragmentSize out = mean_fragment_size(d_sys, d_env, delta, h_sys_nats);
        return py::make_tuple(out.value, out.single_subenvironment_sufficient);
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("delta"), py::arg("h_sys_nats"));
  m.def(
      "approx_specific_redundancy",
      [](int d_sys, int d_env, double delta, double h_sys_nats) {
        return approx_specific_redundancy(d_sys, d_env, delta, h_sys_nats).value;
      },
      py::arg("d_sys"), py::arg("d_env"), py::arg("delta"), py::arg("h_sys_nats"));
  m.def("thumbnail_specific_redundancy", &thumbnail_specific_redundancy, py::arg("d_sys"),
        py::arg("d_env"), py::arg("delta"));

  // validation
  m.def("run_acceptance", [](std::uint64_t seed, unsigned workers) {
        auto results = run_acceptance(seed, workers);
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 424242, py::arg("workers") = 0);
}
