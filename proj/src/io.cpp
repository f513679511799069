#include "qdarwin/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace qdarwin {

std::string to_string(Units u) { return u == Units::nats ? "nats" : "bits"; }

Units units_from_string(const std::string& name) {
  if (name == "nats") return Units::nats;
  if (name == "bits") return Units::bits;
  throw std::invalid_argument("unknown units '" + name + "' (expected nats or bits)");
}

double present(double nats, Units units) {
  return units == Units::nats ? nats : nats / std::numbers::ln2;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace

std::string pip_csv(const Pip& pip, Units units) {
  std::string out = "m,i_mean,i_std,n_samples,units\n";
  if (pip.i_mean.empty()) {
    return out;  // empty curve: header only
  }
  for (int m = 0; m <= pip.n_env; ++m) {
    out += std::to_string(m) + "," + fmt(present(pip.i_mean[m], units)) + "," +
           fmt(present(pip.i_std[m], units)) + "," + std::to_string(pip.samples[m]) +
           "," + to_string(units) + "\n";
  }
  return out;
}

std::string scaled_pip_csv(const ScaledPip& spip) {
  std::string out = "f_cap,f_i,f_i_std,n_samples\n";
  for (std::size_t i = 0; i < spip.f_cap.size(); ++i) {
    out += fmt(spip.f_cap[i]) + "," + fmt(spip.f_i[i]) + "," + fmt(spip.f_i_std[i]) +
           "," + std::to_string(spip.samples[i]) + "\n";
  }
  return out;
}

std::string redundancy_csv(const std::vector<RedundancyReport>& reports) {
  std::string out = "delta,n_delta,r_delta,m_delta,specific_r,samples\n";
  for (const auto& r : reports) {
    out += fmt(r.delta) + "," + fmt(r.n_delta_mean) + "," +
           fmt(std::max(r.r_delta, 0.0)) + "," + fmt(r.m_delta_mean) + "," +
           fmt(r.specific_r) + "," + std::to_string(r.samples) + "\n";
  }
  return out;
}

std::string sweep_csv(const SpecificRedundancySweep& sweep) {
  std::string out = "n_env,r_delta_mean,r_per_n\n";
  for (std::size_t i = 0; i < sweep.n_env_values.size(); ++i) {
    out += std::to_string(sweep.n_env_values[i]) + "," + fmt(sweep.r_delta_mean[i]) +
           "," + fmt(sweep.r_per_n[i]) + "\n";
  }
  return out;
}

std::string overlay_csv(const Pip& exact, const ApproxPip& theory, Units units) {
  std::string out = "m,i_exact,i_std,i_theory,valid,units\n";
  for (int m = 0; m <= exact.n_env; ++m) {
    out += std::to_string(m) + "," + fmt(present(exact.i_mean[m], units)) + "," +
           fmt(present(exact.i_std[m], units)) + "," +
           fmt(present(theory.i_mean[m], units)) + "," +
           (theory.valid[m] ? "1" : "0") + "," + to_string(units) + "\n";
  }
  return out;
}

std::string dfactor_csv(const std::vector<DFactorStats>& stats) {
  std::string out = "d_env,mean_d,std_d\n";
  for (const auto& s : stats) {
    out += std::to_string(s.d_env) + "," + fmt(s.mean_d) + "," + fmt(s.std_d) + "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

namespace {

struct PlotFrame {
  double x0, x1, y0, y1;           // data ranges
  double px0, px1, py0, py1;       // pixel ranges (py0 is the bottom)
  double x(double v) const { return px0 + (v - x0) / (x1 - x0) * (px1 - px0); }
  double y(double v) const { return py0 - (v - y0) / (y1 - y0) * (py0 - py1); }
};

std::string polyline(const PlotFrame& f, const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& color,
                     const std::string& dash) {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", f.x(xs[i]), f.y(ys[i]));
    pts += buf;
  }
  std::string attrs = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
  if (!dash.empty()) {
    attrs += " stroke-dasharray=\"" + dash + "\"";
  }
  return "  <polyline " + attrs + " points=\"" + pts + "\"/>\n";
}

std::string text(double x, double y, const std::string& s, const std::string& anchor,
                 int size = 11) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "  <text x=\"%.1f\" y=\"%.1f\" font-size=\"%d\" font-family=\"sans-serif\" "
                "text-anchor=\"%s\">%s</text>\n",
                x, y, size, anchor.c_str(), s.c_str());
  return buf;
}

}  // namespace

std::string pip_svg(const Pip& pip, const SvgOptions& options) {
  const int width = 640;
  const int height = 420;
  PlotFrame f;
  f.x0 = 0.0;
  f.x1 = std::max(1, pip.n_env);
  f.y0 = 0.0;
  double ymax = 0.0;
  for (double v : pip.i_mean) {
    ymax = std::max(ymax, present(v, options.units));
  }
  if (options.theory != nullptr) {
    for (double v : options.theory->i_mean) {
      ymax = std::max(ymax, present(v, options.units));
    }
  }
  f.y1 = ymax > 0.0 ? ymax * 1.08 : 1.0;
  f.px0 = 60.0;
  f.px1 = width - 20.0;
  f.py0 = height - 50.0;
  f.py1 = 30.0;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  char axis[256];
  std::snprintf(axis, sizeof(axis),
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                f.px0, f.py0, f.px1, f.py0, f.px0, f.py0, f.px0, f.py1);
  svg += axis;

  // Ticks: x every max(1, N/8); y in 5 steps.
  int xstep = std::max(1, pip.n_env / 8);
  for (int m = 0; m <= pip.n_env; m += xstep) {
    double px = f.x(m);
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  px, f.py0, px, f.py0 + 4);
    svg += buf;
    svg += text(px, f.py0 + 16, std::to_string(m), "middle");
  }
  for (int i = 0; i <= 5; ++i) {
    double v = f.y0 + (f.y1 - f.y0) * i / 5.0;
    double py = f.y(v);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  f.px0 - 4, py, f.px0, py);
    svg += buf;
    char label[32];
    std::snprintf(label, sizeof(label), "%.3g", v);
    svg += text(f.px0 - 8, py + 4, label, "end");
  }
  svg += text((f.px0 + f.px1) / 2, height - 14.0, "fragment size m", "middle");
  svg += text(14.0, (f.py0 + f.py1) / 2, "I (" + to_string(options.units) + ")", "middle");
  if (!options.title.empty()) {
    svg += text((f.px0 + f.px1) / 2, 18.0, options.title, "middle", 13);
  }

  // Plateau reference at H_S.
  double h = present(pip.h_sys, options.units);
  svg += polyline(f, {f.x0, f.x1}, {h, h}, "#888888", "6,4");
  svg += text(f.px1 - 4, f.y(h) - 4, "H_S", "end");

  if (options.show_threshold) {
    double thr = present(options.threshold_nats, options.units);
    svg += polyline(f, {f.x0, f.x1}, {thr, thr}, "#bb4444", "2,3");
    svg += text(f.px1 - 4, f.y(thr) - 4, "threshold", "end");
  }

  if (options.theory != nullptr) {
    std::vector<double> xs, ys;
    for (int m = 0; m <= options.theory->n_env; ++m) {
      xs.push_back(m);
      ys.push_back(present(options.theory->i_mean[m], options.units));
    }
    svg += polyline(f, xs, ys, "#2a7f2a", "4,3");
  }

  std::vector<double> xs, ys;
  for (int m = 0; m <= pip.n_env; ++m) {
    xs.push_back(m);
    ys.push_back(present(pip.i_mean[m], options.units));
  }
  svg += polyline(f, xs, ys, "#1f4e9c", "");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#1f4e9c\"/>\n",
                  f.x(xs[i]), f.y(ys[i]));
    svg += buf;
  }

  svg += "</svg>\n";
  return svg;
}

std::string scaled_pip_svg(const ScaledPip& spip, const std::string& title,
                           bool show_threshold, double delta) {
  const int width = 640;
  const int height = 420;
  PlotFrame f{0.0, 1.0, 0.0, 1.05, 60.0, width - 20.0, height - 50.0, 30.0};

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char axis[256];
  std::snprintf(axis, sizeof(axis),
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                "  <line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                f.px0, f.py0, f.px1, f.py0, f.px0, f.py0, f.px0, f.py1);
  svg += axis;
  for (int i = 0; i <= 5; ++i) {
    double v = i / 5.0;
    char label[16];
    std::snprintf(label, sizeof(label), "%.1f", v);
    svg += text(f.x(v), f.py0 + 16, label, "middle");
    svg += text(f.px0 - 8, f.y(v) + 4, label, "end");
  }
  svg += text((f.px0 + f.px1) / 2, height - 14.0, "captured fraction f_cap", "middle");
  svg += text(14.0, (f.py0 + f.py1) / 2, "f_I", "middle");
  if (!title.empty()) {
    svg += text((f.px0 + f.px1) / 2, 18.0, title, "middle", 13);
  }
  svg += polyline(f, {0.0, 1.0}, {0.5, 0.5}, "#888888", "6,4");
  if (show_threshold) {
    double thr = 0.5 * (1.0 - delta);
    svg += polyline(f, {0.0, 1.0}, {thr, thr}, "#bb4444", "2,3");
    svg += text(f.px1 - 4, f.y(thr) - 4, "(1-delta)/2", "end");
  }
  svg += polyline(f, spip.f_cap, spip.f_i, "#1f4e9c", "");
  svg += "</svg>\n";
  return svg;
}

}  // namespace qdarwin
