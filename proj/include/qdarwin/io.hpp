#pragma once

#include <string>
#include <vector>

#include "qdarwin/redundancy.hpp"
#include "qdarwin/theory.hpp"
#include "qdarwin/universe.hpp"

namespace qdarwin {

enum class Units { nats, bits };

std::string to_string(Units u);
Units units_from_string(const std::string& name);

/// Converts nats to the requested presentation unit.
double present(double nats, Units units);

/// PIP rows, columns exactly: m,i_mean,i_std,n_samples,units.
std::string pip_csv(const Pip& pip, Units units);

/// SPIP rows, columns: f_cap,f_i,f_i_std,n_samples.
std::string scaled_pip_csv(const ScaledPip& spip);

/// Redundancy rows, columns exactly: delta,n_delta,r_delta,m_delta,specific_r,samples.
/// Negative r_delta is floored at zero for this display; the report keeps
/// the raw value.
std::string redundancy_csv(const std::vector<RedundancyReport>& reports);

/// Sweep rows, columns: n_env,r_delta_mean,r_per_n.
std::string sweep_csv(const SpecificRedundancySweep& sweep);

/// Exact-vs-theory rows, columns: m,i_exact,i_std,i_theory,valid,units.
std::string overlay_csv(const Pip& exact, const ApproxPip& theory, Units units);

/// D-factor rows, columns: d_env,mean_d,std_d.
std::string dfactor_csv(const std::vector<DFactorStats>& stats);

void write_file(const std::string& path, const std::string& content);

/// Self-contained SVG line plot of a PIP with the plateau reference line
/// at H_S and, optionally, a sufficiency threshold line.
struct SvgOptions {
  std::string title;
  Units units = Units::nats;
  bool show_threshold = false;
  double threshold_nats = 0.0;
  const ApproxPip* theory = nullptr;  // optional second curve
};

std::string pip_svg(const Pip& pip, const SvgOptions& options);

/// SPIP plot on fractional axes, with the f_i = 1/2 plateau line and an
/// optional threshold line at f_i = (1-delta)/2.
std::string scaled_pip_svg(const ScaledPip& spip, const std::string& title,
                           bool show_threshold = false, double delta = 0.0);

}  // namespace qdarwin
