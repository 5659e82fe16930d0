#include "su11/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace su11 {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void SweepRequest::validate() const {
  if (!(step > 0.0)) {
    throw invalid_parameter_error("sweep: step must be > 0");
  }
  if (from > to) {
    throw invalid_parameter_error("sweep: empty range");
  }
  if (detections.empty()) {
    throw invalid_parameter_error("sweep: at least one detection required");
  }
  if (variable == Variable::loss && (from < 0.0 || to >= 1.0)) {
    throw invalid_parameter_error("sweep: loss range must lie in [0, 1)");
  }
  if ((variable == Variable::ntot_via_g || variable == Variable::ntot_via_alpha) &&
      from < 0.0) {
    throw invalid_parameter_error("sweep: g/alpha must be >= 0");
  }
  config.validate();
}

std::string SweepRequest::variable_name() const {
  switch (variable) {
    case Variable::phi:
      return "phi";
    case Variable::loss:
      return "loss";
    case Variable::ntot_via_g:
      return "g";
    case Variable::ntot_via_alpha:
      return "alpha";
  }
  return "value";
}

PhiWindow default_window(const InputSpec& spec) {
  const bool even_signal =
      spec.kind != InputSpec::Kind::two_coherent && spec.theta_alpha == 0.0;
  if (even_signal) {
    return {1e-6, M_PI - 1e-6};
  }
  return {-M_PI + 1e-6, M_PI - 1e-6};
}

namespace {

struct SweepPoint {
  InputSpec spec;
  InterferometerConfig config;
  double raw = 0.0;
};

SweepPoint point_at(const SweepRequest& req, double v) {
  SweepPoint pt{req.spec, req.config, v};
  switch (req.variable) {
    case SweepRequest::Variable::phi:
      break;
    case SweepRequest::Variable::loss:
      pt.config.l1 = v;
      pt.config.l2 = v;
      break;
    case SweepRequest::Variable::ntot_via_g:
      pt.config.g1 = v;
      pt.config.g2 = v;
      break;
    case SweepRequest::Variable::ntot_via_alpha:
      pt.spec.alpha_mag = v;
      break;
  }
  return pt;
}

SweepRow evaluate_point(const SweepRequest& req, const DetectionKind& det, double v) {
  const SweepPoint pt = point_at(req, v);
  SweepRow row;
  row.value = pt.raw;
  row.detection = det.name();
  const closed_forms::LimitSet limits = closed_forms::quantum_limits(pt.spec, pt.config);
  row.snl = limits.snl;
  row.hl = limits.hl;
  row.qcrb = limits.qcrb;

  if (req.variable == SweepRequest::Variable::phi) {
    row.phi = v;
    try {
      const SensitivityResult res = phase_sensitivity(det, pt.spec, pt.config, v);
      row.delta_phi = res.delta_phi;
      row.signal = res.signal;
      row.signal_variance = res.signal_variance;
    } catch (const derivative_underflow_error&) {
      row.diverged = true;
      const MomentStats stats =
          detection_stats(propagate(pt.spec, pt.config, v, pt.config.has_loss()), det);
      row.signal = stats.mean;
      row.signal_variance = stats.variance;
    }
    return row;
  }

  try {
    const OptimalSensitivity opt =
        optimal_sensitivity(det, pt.spec, pt.config, default_window(pt.spec));
    row.phi = opt.phi_opt;
    row.delta_phi = opt.delta_phi;
    const MomentStats stats = detection_stats(
        propagate(pt.spec, pt.config, opt.phi_opt, pt.config.has_loss()), det);
    row.signal = stats.mean;
    row.signal_variance = stats.variance;
  } catch (const search_failure_error&) {
    row.diverged = true;
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepRequest& req, ExecMode mode) {
  req.validate();
  std::vector<double> values;
  for (double v = req.from; v <= req.to + 0.5 * req.step; v += req.step) {
    values.push_back(v);
  }
  const int n_det = static_cast<int>(req.detections.size());
  SweepResult result;
  result.request = req;
  result.rows.resize(values.size() * n_det);
  parallel_for(static_cast<int>(result.rows.size()), mode, [&](int i) {
    const int vi = i / n_det;
    const int di = i % n_det;
    result.rows[i] = evaluate_point(req, req.detections[di], values[vi]);
  });
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& os) {
  const SweepRequest& req = result.request;
  os << "# su11sim sweep\n";
  os << "# input=" << req.spec.kind_name() << " alpha=" << fmt12(req.spec.alpha_mag)
     << " theta_alpha=" << fmt12(req.spec.theta_alpha) << " r=" << fmt12(req.spec.r)
     << " theta_s=" << fmt12(req.spec.theta_s) << "\n";
  os << "# config g1=" << fmt12(req.config.g1) << " g2=" << fmt12(req.config.g2)
     << " theta1=" << fmt12(req.config.theta1) << " theta2=" << fmt12(req.config.theta2)
     << " l1=" << fmt12(req.config.l1) << " l2=" << fmt12(req.config.l2) << "\n";
  os << "# variable=" << req.variable_name() << " from=" << fmt12(req.from)
     << " to=" << fmt12(req.to) << " step=" << fmt12(req.step) << "\n";
  os << req.variable_name()
     << ",n_tot,detection,phi,signal,signal_variance,delta_phi,snl,hl,qcrb,diverged\n";
  for (const SweepRow& row : result.rows) {
    const SweepPoint pt = point_at(req, row.value);
    const double n_tot = photon_budget(pt.spec, pt.config).n_tot;
    os << fmt12(row.value) << ',' << fmt12(n_tot) << ',' << row.detection << ','
       << fmt12(row.phi) << ',' << fmt12(row.signal) << ',' << fmt12(row.signal_variance)
       << ',' << (row.diverged ? "" : fmt12(row.delta_phi)) << ',' << fmt12(row.snl)
       << ',' << fmt12(row.hl) << ',' << (row.qcrb ? fmt12(*row.qcrb) : "") << ','
       << (row.diverged ? 1 : 0) << "\n";
  }
}

double critical_loss(const InputSpec& spec, const InterferometerConfig& config,
                     const DetectionKind& det, double tol) {
  const double snl = closed_forms::quantum_limits(spec, config).snl;
  const PhiWindow window = default_window(spec);
  auto excess = [&](double l) {
    InterferometerConfig c = config;
    c.l1 = l;
    c.l2 = l;
    return optimal_sensitivity(det, spec, c, window).delta_phi - snl;
  };
  if (excess(0.0) >= 0.0) {
    throw search_failure_error(
        "critical_loss: optimal sensitivity does not beat the SNL at L = 0");
  }
  double lo = 0.0;
  double hi = 0.5;
  if (excess(hi) <= 0.0) {
    throw search_failure_error("critical_loss: no SNL crossing in L <= 0.5");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

namespace fs = std::filesystem;

struct Cell {
  double value = 0.0;
  bool empty = false;

  Cell() = default;
  Cell(double v) : value(v) {}  // NOLINT: implicit by design
  static Cell none() {
    Cell c;
    c.empty = true;
    return c;
  }
  std::string text() const { return empty ? "" : fmt12(value); }
};

// Sensitivity at fixed phi; empty cell + flag on divergence.
std::pair<Cell, int> try_sensitivity(const DetectionKind& det, const InputSpec& spec,
                                     const InterferometerConfig& config, double phi) {
  try {
    return {Cell(phase_sensitivity(det, spec, config, phi).delta_phi), 0};
  } catch (const derivative_underflow_error&) {
    return {Cell::none(), 1};
  }
}

std::pair<Cell, int> try_optimal(const DetectionKind& det, const InputSpec& spec,
                                 const InterferometerConfig& config) {
  try {
    return {Cell(optimal_sensitivity(det, spec, config, default_window(spec)).delta_phi),
            0};
  } catch (const search_failure_error&) {
    return {Cell::none(), 1};
  }
}

std::string write_rows(const fs::path& path, const std::string& meta,
                       const std::string& header,
                       const std::vector<std::vector<Cell>>& rows) {
  std::ofstream os(path);
  if (!os) {
    throw invalid_parameter_error("cannot open output file " + path.string());
  }
  os << "# su11sim figure data\n" << meta << header << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << row[i].text();
    }
    os << "\n";
  }
  return path.string();
}

std::vector<double> linspace(double from, double to, double step) {
  std::vector<double> v;
  for (double x = from; x <= to + 0.5 * step; x += step) {
    v.push_back(x);
  }
  return v;
}

struct Panel {
  std::string name;
  InputSpec spec;
};

std::vector<Panel> standard_panels() {
  return {{"vacuum", InputSpec::vacuum()},
          {"one_coherent", InputSpec::coherent(2.0)},
          {"coherent_squeezed", InputSpec::coherent_squeezed(2.0, 0.0, 1.0)}};
}

std::string input_meta(const InputSpec& spec, const InterferometerConfig& config) {
  std::string meta = "# input=" + spec.kind_name() + " alpha=" + fmt12(spec.alpha_mag) +
                     " theta_alpha=" + fmt12(spec.theta_alpha) + " r=" + fmt12(spec.r) +
                     "\n";
  meta += "# config g=" + fmt12(config.g1) + " theta1=" + fmt12(config.theta1) +
          " theta2=" + fmt12(config.theta2) + " l1=" + fmt12(config.l1) +
          " l2=" + fmt12(config.l2) + "\n";
  return meta;
}

std::vector<std::string> figure_phi_vs_loss_curves(const fs::path& dir, ExecMode mode) {
  // Parity sensitivity versus phi for L in {0, 0.05, 0.1} plus the limits.
  std::vector<std::string> files;
  const std::vector<double> losses = {0.0, 0.05, 0.1};
  const std::vector<double> phis = linspace(-3.0, 3.0, 0.01);
  for (const Panel& panel : standard_panels()) {
    const InterferometerConfig base = InterferometerConfig::balanced(1.0);
    const auto limits = closed_forms::quantum_limits(panel.spec, base);
    std::vector<std::vector<Cell>> rows(phis.size());
    parallel_for(static_cast<int>(phis.size()), mode, [&](int i) {
      std::vector<Cell> row{Cell(phis[i])};
      for (const double l : losses) {
        auto [cell, div] = try_sensitivity(DetectionKind::parity(), panel.spec,
                                           InterferometerConfig::balanced(1.0, l, l),
                                           phis[i]);
        row.push_back(cell);
        row.push_back(Cell(div));
      }
      row.push_back(Cell(limits.snl));
      row.push_back(Cell(limits.hl));
      row.push_back(limits.qcrb ? Cell(*limits.qcrb) : Cell::none());
      rows[i] = std::move(row);
    });
    files.push_back(write_rows(
        dir / ("fig3_" + panel.name + ".csv"), input_meta(panel.spec, base),
        "phi,delta_phi_l0,diverged_l0,delta_phi_l005,diverged_l005,delta_phi_l01,"
        "diverged_l01,snl,hl,qcrb",
        rows));
  }
  return files;
}

std::vector<std::string> figure_critical_loss_curves(const fs::path& dir, ExecMode mode) {
  std::vector<std::string> files;
  struct Series {
    std::string name;
    std::string var;
    std::vector<double> values;
    bool vary_g = true;
  };
  const std::vector<Series> series = {
      {"vacuum_vary_g", "g", {0.6, 0.8, 1.0, 1.25, 1.5, 1.75, 2.0}, true},
      {"coherent_vary_g", "g", {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0}, true},
      {"coherent_vary_alpha", "alpha", {0.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}, false}};
  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    std::vector<std::vector<Cell>> rows(s.values.size());
    parallel_for(static_cast<int>(s.values.size()), mode, [&](int i) {
      InputSpec spec = si == 0 ? InputSpec::vacuum() : InputSpec::coherent(2.0);
      InterferometerConfig config = InterferometerConfig::balanced(1.0);
      if (s.vary_g) {
        config = InterferometerConfig::balanced(s.values[i]);
      } else {
        spec = s.values[i] == 0.0 ? InputSpec::vacuum()
                                  : InputSpec::coherent(s.values[i]);
      }
      const double n_tot = photon_budget(spec, config).n_tot;
      Cell l_cri = Cell::none();
      try {
        l_cri = Cell(critical_loss(spec, config));
      } catch (const search_failure_error&) {
      }
      rows[i] = {Cell(s.values[i]), Cell(n_tot), l_cri,
                 Cell(closed_forms::quantum_limits(spec, config).snl)};
    });
    files.push_back(write_rows(dir / ("fig4_" + s.name + ".csv"), "",
                               s.var + ",n_tot,l_cri,snl", rows));
  }
  return files;
}

std::vector<std::string> figure_optimal_vs_loss(const fs::path& dir, ExecMode mode,
                                                bool two_coherent) {
  std::vector<std::string> files;
  std::vector<Panel> panels;
  double l_max = 0.3;
  double l_step = 0.02;
  int fig = 5;
  if (two_coherent) {
    panels = {{"two_coherent", InputSpec::two_coherent(2.0)}};
    l_max = 0.35;
    l_step = 0.025;
    fig = 7;
  } else {
    panels = standard_panels();
  }
  const std::vector<double> losses = linspace(0.0, l_max, l_step);
  for (const Panel& panel : panels) {
    std::vector<std::vector<Cell>> rows(losses.size());
    parallel_for(static_cast<int>(losses.size()), mode, [&](int i) {
      const double l = losses[i];
      const InterferometerConfig config = InterferometerConfig::balanced(1.0, l, l);
      const auto limits = closed_forms::quantum_limits(panel.spec, config);
      auto pd = try_optimal(DetectionKind::parity(), panel.spec, config).first;
      auto id = try_optimal(DetectionKind::intensity(), panel.spec, config).first;
      // Reference homodyne/intensity expressions where defined; the homodyne
      // column stays empty for vacuum input (no coherent carrier).
      Cell hd_cf = Cell::none();
      Cell id_cf = Cell::none();
      try {
        if (panel.spec.kind == InputSpec::Kind::two_coherent) {
          hd_cf = Cell(closed_forms::hd_sensitivity_two_coherent(panel.spec.alpha_mag,
                                                                 config.g1, l));
          id_cf = Cell(closed_forms::id_sensitivity_two_coherent(panel.spec.alpha_mag,
                                                                 config.g1, l));
        } else {
          hd_cf = Cell(closed_forms::hd_sensitivity_lossy(panel.spec.alpha_mag,
                                                          panel.spec.r, config.g1, l));
        }
      } catch (const unsupported_error&) {
      }
      rows[i] = {Cell(l),
                 pd,
                 id,
                 hd_cf,
                 id_cf,
                 Cell(limits.snl),
                 Cell(limits.hl),
                 limits.qcrb ? Cell(*limits.qcrb) : Cell::none()};
    });
    files.push_back(write_rows(
        dir / ("fig" + std::to_string(fig) + "_" + panel.name + ".csv"),
        input_meta(panel.spec, InterferometerConfig::balanced(1.0)),
        "loss,delta_phi_pd,delta_phi_id,delta_phi_hd_cf,delta_phi_id_cf,snl,hl,qcrb",
        rows));
  }
  return files;
}

std::vector<std::string> figure_detection_phi_curves(const fs::path& dir, ExecMode mode) {
  // Sensitivity versus phi for parity, homodyne, and intensity at L = 0.
  // The homodyne quadrature is pi/2 in this quadrature convention (the
  // squeezed input axis lies along P); for vacuum input its signal carries
  // no phase dependence and the column stays empty.
  std::vector<std::string> files;
  const std::vector<double> phis = linspace(-3.0, 3.0, 0.01);
  for (const Panel& panel : standard_panels()) {
    const InterferometerConfig config = InterferometerConfig::balanced(1.0);
    const auto limits = closed_forms::quantum_limits(panel.spec, config);
    const bool panel_c = panel.spec.kind == InputSpec::Kind::coherent_squeezed;
    std::vector<std::vector<Cell>> rows(phis.size());
    parallel_for(static_cast<int>(phis.size()), mode, [&](int i) {
      std::vector<Cell> row{Cell(phis[i])};
      for (const DetectionKind& det :
           {DetectionKind::parity(), DetectionKind::homodyne(1, M_PI / 2.0),
            DetectionKind::intensity()}) {
        auto [cell, div] = try_sensitivity(det, panel.spec, config, phis[i]);
        row.push_back(cell);
        row.push_back(Cell(div));
      }
      if (panel_c) {
        for (const double theta_alpha : {M_PI / 10.0, M_PI / 4.0}) {
          InputSpec rotated = panel.spec;
          rotated.theta_alpha = theta_alpha;
          auto [cell, div] =
              try_sensitivity(DetectionKind::intensity(), rotated, config, phis[i]);
          row.push_back(cell);
          row.push_back(Cell(div));
        }
      }
      row.push_back(Cell(limits.snl));
      row.push_back(Cell(limits.hl));
      row.push_back(limits.qcrb ? Cell(*limits.qcrb) : Cell::none());
      rows[i] = std::move(row);
    });
    std::string header =
        "phi,delta_phi_pd,diverged_pd,delta_phi_hd,diverged_hd,delta_phi_id,diverged_id";
    if (panel_c) {
      header += ",delta_phi_id_ta_pi10,diverged_id_ta_pi10,delta_phi_id_ta_pi4,"
                "diverged_id_ta_pi4";
    }
    header += ",snl,hl,qcrb";
    files.push_back(write_rows(dir / ("fig6_" + panel.name + ".csv"),
                               input_meta(panel.spec, config), header, rows));
  }
  return files;
}

std::vector<std::string> figure_unequal_loss(const fs::path& dir, ExecMode mode) {
  const InputSpec spec = InputSpec::coherent(2.0);
  const std::vector<double> phis = linspace(-3.0, 3.0, 0.01);
  const auto limits =
      closed_forms::quantum_limits(spec, InterferometerConfig::balanced(1.0));
  std::vector<std::vector<Cell>> rows(phis.size());
  parallel_for(static_cast<int>(phis.size()), mode, [&](int i) {
    std::vector<Cell> row{Cell(phis[i])};
    for (auto [l1, l2] : {std::pair<double, double>{0.0, 0.0}, {0.1, 0.0}, {0.0, 0.1}}) {
      auto [cell, div] = try_sensitivity(DetectionKind::parity(), spec,
                                         InterferometerConfig::balanced(1.0, l1, l2),
                                         phis[i]);
      row.push_back(cell);
      row.push_back(Cell(div));
    }
    row.push_back(Cell(limits.snl));
    row.push_back(Cell(limits.hl));
    row.push_back(limits.qcrb ? Cell(*limits.qcrb) : Cell::none());
    rows[i] = std::move(row);
  });
  return {write_rows(
      dir / "fig8_unequal_loss.csv", input_meta(spec, InterferometerConfig::balanced(1.0)),
      "phi,delta_phi_ideal,diverged_ideal,delta_phi_sensing_arm,diverged_sensing_arm,"
      "delta_phi_free_arm,diverged_free_arm,snl,hl,qcrb",
      rows)};
}

}  // namespace

std::vector<std::string> write_figure(int figure, const std::string& out_dir,
                                      ExecMode mode) {
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  switch (figure) {
    case 3:
      return figure_phi_vs_loss_curves(dir, mode);
    case 4:
      return figure_critical_loss_curves(dir, mode);
    case 5:
      return figure_optimal_vs_loss(dir, mode, false);
    case 6:
      return figure_detection_phi_curves(dir, mode);
    case 7:
      return figure_optimal_vs_loss(dir, mode, true);
    case 8:
      return figure_unequal_loss(dir, mode);
    default:
      throw invalid_parameter_error("write_figure: supported figures are 3..8");
  }
}

}  // namespace su11
