#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "su11/verify.hpp"

namespace {

using namespace su11;

constexpr int kExitOk = 0;
constexpr int kExitInvalidParams = 2;
constexpr int kExitNumericalFailure = 3;
constexpr int kExitVerifyFailure = 4;

struct CommonOpts {
  double g = 1.0;
  double g1 = -1.0;
  double g2 = -1.0;
  double theta1 = 0.0;
  double theta2 = M_PI;
  double alpha = 0.0;
  double theta_alpha = 0.0;
  double r = 0.0;
  double theta_s = 0.0;
  double phi = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double loss = -1.0;
  double homodyne_theta = 0.0;
  std::string input = "vacuum";
  std::vector<std::string> detections = {"parity"};
  std::string out;
  bool serial = false;

  InputSpec spec() const {
    InputSpec s;
    s.kind = InputSpec::parse_kind(input);
    s.alpha_mag = alpha;
    s.theta_alpha = theta_alpha;
    s.r = r;
    s.theta_s = theta_s;
    return s;
  }

  InterferometerConfig config() const {
    InterferometerConfig c;
    c.g1 = g1 >= 0.0 ? g1 : g;
    c.g2 = g2 >= 0.0 ? g2 : g;
    c.theta1 = theta1;
    c.theta2 = theta2;
    c.l1 = loss >= 0.0 ? loss : l1;
    c.l2 = loss >= 0.0 ? loss : l2;
    c.validate();
    return c;
  }

  DetectionKind detection(const std::string& name) const {
    if (name == "parity") {
      return DetectionKind::parity();
    }
    if (name == "homodyne") {
      return DetectionKind::homodyne(1, homodyne_theta);
    }
    if (name == "intensity") {
      return DetectionKind::intensity();
    }
    throw invalid_parameter_error("unknown detection: " + name);
  }

  ExecMode exec() const { return serial ? ExecMode::serial : ExecMode::openmp; }
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--g", o.g, "OPA strength g1 = g2");
  cmd->add_option("--g1", o.g1, "first OPA strength (overrides --g)");
  cmd->add_option("--g2", o.g2, "second OPA strength (overrides --g)");
  cmd->add_option("--theta1", o.theta1, "first OPA phase");
  cmd->add_option("--theta2", o.theta2, "second OPA phase (default pi)");
  cmd->add_option("--alpha", o.alpha, "|alpha_0| of the coherent input");
  cmd->add_option("--theta-alpha", o.theta_alpha, "phase of alpha_0");
  cmd->add_option("--r", o.r, "squeezing strength");
  cmd->add_option("--theta-s", o.theta_s, "squeezing phase");
  cmd->add_option("--phi", o.phi, "interferometer phase");
  cmd->add_option("--l1", o.l1, "loss on the phase-sensing arm");
  cmd->add_option("--l2", o.l2, "loss on the free arm");
  cmd->add_option("--loss", o.loss, "shorthand for --l1 X --l2 X");
  cmd->add_option("--homodyne-theta", o.homodyne_theta,
                  "homodyne quadrature angle (pi/2 tracks the squeezed axis)");
  cmd->add_option("--input", o.input, "vacuum|coherent|coherent-squeezed|two-coherent")
      ->check(CLI::IsMember({"vacuum", "coherent", "coherent-squeezed", "two-coherent"}));
  cmd->add_option("--detection", o.detections, "parity|homodyne|intensity (repeatable)");
  cmd->add_option("--out", o.out, "output path");
  cmd->add_flag("--serial", o.serial, "run grid kernels on the serial reference path");
}

// Relative outputs land in $SU11SIM_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  const char* base = std::getenv("SU11SIM_OUT_DIR");
  if (path.empty() || base == nullptr || *base == '\0' ||
      std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(base) / path).string();
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << "=" << value << "\n";
}

int cmd_signal(const CommonOpts& o) {
  const auto stats = detection_stats(propagate(o.spec(), o.config(), o.phi),
                                     o.detection(o.detections.front()));
  print_kv("detection", o.detections.front());
  print_kv("phi", fmt12(o.phi));
  print_kv("signal", fmt12(stats.mean));
  print_kv("signal_variance", fmt12(stats.variance));
  return kExitOk;
}

int cmd_sensitivity(const CommonOpts& o) {
  const auto det = o.detection(o.detections.front());
  const SensitivityResult res = phase_sensitivity(det, o.spec(), o.config(), o.phi);
  const auto limits = closed_forms::quantum_limits(o.spec(), o.config());
  print_kv("detection", det.name());
  print_kv("phi", fmt12(res.phi));
  print_kv("signal", fmt12(res.signal));
  print_kv("signal_variance", fmt12(res.signal_variance));
  print_kv("delta_phi", fmt12(res.delta_phi));
  print_kv("snl", fmt12(limits.snl));
  print_kv("hl", fmt12(limits.hl));
  print_kv("qcrb", limits.qcrb ? fmt12(*limits.qcrb) : "");
  return kExitOk;
}

int cmd_sweep(const CommonOpts& o, const std::string& variable, double from, double to,
              double step) {
  SweepRequest req;
  if (variable == "phi") {
    req.variable = SweepRequest::Variable::phi;
  } else if (variable == "loss") {
    req.variable = SweepRequest::Variable::loss;
  } else if (variable == "ntot-g") {
    req.variable = SweepRequest::Variable::ntot_via_g;
  } else if (variable == "ntot-alpha") {
    req.variable = SweepRequest::Variable::ntot_via_alpha;
  } else {
    throw invalid_parameter_error("unknown sweep variable: " + variable);
  }
  req.from = from;
  req.to = to;
  req.step = step;
  req.spec = o.spec();
  req.config = o.config();
  req.detections.clear();
  for (const std::string& name : o.detections) {
    req.detections.push_back(o.detection(name));
  }
  const SweepResult result = run_sweep(req, o.exec());
  const std::string out = resolve_out(o.out);
  if (out.empty()) {
    write_sweep_csv(result, std::cout);
    return kExitOk;
  }
  std::ofstream os(out);
  if (!os) {
    throw invalid_parameter_error("cannot open output file " + out);
  }
  write_sweep_csv(result, os);
  std::cerr << "wrote " << out << "\n";
  return kExitOk;
}

int cmd_critical_loss(const CommonOpts& o) {
  const double l_cri =
      critical_loss(o.spec(), o.config(), o.detection(o.detections.front()));
  print_kv("l_cri", fmt12(l_cri));
  print_kv("snl", fmt12(closed_forms::quantum_limits(o.spec(), o.config()).snl));
  return kExitOk;
}

int cmd_compare(const CommonOpts& o) {
  const InputSpec spec = o.spec();
  const InterferometerConfig config = o.config();
  const auto limits = closed_forms::quantum_limits(spec, config);
  const PhiWindow window = default_window(spec);

  std::cout << "# optimal sensitivities, input=" << spec.kind_name()
            << " alpha=" << fmt12(spec.alpha_mag) << " r=" << fmt12(spec.r)
            << " g=" << fmt12(config.g1) << " l1=" << fmt12(config.l1)
            << " l2=" << fmt12(config.l2) << "\n";
  std::cout << "detection,phi_opt,delta_phi,closed_form\n";
  struct Entry {
    DetectionKind det;
    std::string closed_form;
  };
  std::string hd_cf;
  std::string id_cf;
  std::string pd_cf;
  const double l = config.l1;
  try {
    hd_cf = fmt12(spec.kind == InputSpec::Kind::two_coherent
                      ? closed_forms::hd_sensitivity_two_coherent(spec.alpha_mag,
                                                                  config.g1, l)
                      : closed_forms::hd_sensitivity_lossy(spec.alpha_mag, spec.r,
                                                           config.g1, l));
  } catch (const unsupported_error&) {
  }
  if (spec.kind == InputSpec::Kind::two_coherent) {
    id_cf = fmt12(closed_forms::id_sensitivity_two_coherent(spec.alpha_mag, config.g1, l));
  }
  if (!config.has_loss()) {
    pd_cf = fmt12(closed_forms::parity_sensitivity_ideal_optimal(
        spec.kind == InputSpec::Kind::vacuum ? 0.0 : spec.alpha_mag, spec.theta_alpha,
        spec.r, config.g1));
  }
  const std::vector<Entry> entries = {
      {DetectionKind::parity(), pd_cf},
      {DetectionKind::homodyne(1, M_PI / 2.0), hd_cf},
      {DetectionKind::intensity(), id_cf},
  };
  for (const Entry& e : entries) {
    std::cout << e.det.name() << ',';
    try {
      const OptimalSensitivity opt = optimal_sensitivity(e.det, spec, config, window);
      std::cout << fmt12(opt.phi_opt) << ',' << fmt12(opt.delta_phi);
    } catch (const search_failure_error&) {
      std::cout << ",";
    }
    std::cout << ',' << e.closed_form << "\n";
  }
  std::cout << "snl," << fmt12(limits.snl) << ",,\n";
  std::cout << "hl," << fmt12(limits.hl) << ",,\n";
  if (limits.qcrb) {
    std::cout << "qcrb," << fmt12(*limits.qcrb) << ",,\n";
  }
  return kExitOk;
}

int cmd_fig(const CommonOpts& o, int figure, const std::string& out_dir) {
  const std::string dir = resolve_out(out_dir);
  for (const std::string& file : write_figure(figure, dir, o.exec())) {
    std::cerr << "wrote " << file << "\n";
  }
  return kExitOk;
}

int cmd_verify(const CommonOpts& o, const std::string& level) {
  VerifyOptions options;
  options.level =
      level == "quick" ? VerifyOptions::Level::quick : VerifyOptions::Level::full;
  options.exec = o.exec();
  const VerifyReport report = run_verify(options);
  const std::string text = report.to_text();
  std::cout << text;
  const std::string out = resolve_out(o.out);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) {
      throw invalid_parameter_error("cannot open output file " + out);
    }
    os << text;
    std::cerr << "wrote " << out << "\n";
  }
  return report.pass() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lossy SU(1,1) interferometer phase-sensitivity toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read defaults from a TOML/INI file");
  app.get_config_formatter_base()->comment('#');

  CommonOpts opts;
  std::string sweep_variable = "phi";
  double sweep_from = -3.0;
  double sweep_to = 3.0;
  double sweep_step = 0.05;
  int figure = 3;
  std::string fig_dir = "figures";
  std::string verify_level = "full";

  CLI::App* c_signal = app.add_subcommand("signal", "detection signal at a phase point");
  CLI::App* c_sens = app.add_subcommand("sensitivity", "sensitivity at a phase point");
  CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  c_sweep->add_option("--var", sweep_variable, "phi|loss|ntot-g|ntot-alpha")
      ->check(CLI::IsMember({"phi", "loss", "ntot-g", "ntot-alpha"}));
  c_sweep->add_option("--from", sweep_from, "range start");
  c_sweep->add_option("--to", sweep_to, "range end");
  c_sweep->add_option("--step", sweep_step, "grid step (> 0)");
  CLI::App* c_cri = app.add_subcommand("critical-loss",
                                       "largest loss still reaching the SNL");
  CLI::App* c_cmp = app.add_subcommand("compare",
                                       "optimal sensitivity per detection scheme");
  CLI::App* c_fig = app.add_subcommand("fig", "emit figure data series");
  c_fig->add_option("--n", figure, "figure number (3..8)")->required();
  c_fig->add_option("--out-dir", fig_dir, "output directory");
  CLI::App* c_verify = app.add_subcommand("verify", "run the verification suites");
  c_verify->add_option("--level", verify_level, "quick|full")
      ->check(CLI::IsMember({"quick", "full"}));

  for (CLI::App* cmd : {c_signal, c_sens, c_sweep, c_cri, c_cmp, c_fig, c_verify}) {
    add_common_flags(cmd, opts);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidParams;
  }

  try {
    if (c_signal->parsed()) return cmd_signal(opts);
    if (c_sens->parsed()) return cmd_sensitivity(opts);
    if (c_sweep->parsed())
      return cmd_sweep(opts, sweep_variable, sweep_from, sweep_to, sweep_step);
    if (c_cri->parsed()) return cmd_critical_loss(opts);
    if (c_cmp->parsed()) return cmd_compare(opts);
    if (c_fig->parsed()) return cmd_fig(opts, figure, fig_dir);
    if (c_verify->parsed()) return cmd_verify(opts, verify_level);
  } catch (const invalid_parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidParams;
  } catch (const derivative_underflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const search_failure_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const numeric_degeneracy_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const unsupported_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidParams;
  }
  return kExitOk;
}
