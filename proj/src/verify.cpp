#include "su11/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace su11 {

namespace cf = closed_forms;

VerifySignals VerifySignals::defaults() {
  VerifySignals s;
  s.ideal_parity_signal = [](double a, double ta, double r, double g, double phi) {
    return cf::parity_signal_ideal_cf(a, ta, r, g, phi);
  };
  s.lossy_parity_signal = [](double a, double r, double g, double phi, double l) {
    return cf::parity_signal_lossy_cf(a, r, g, phi, l);
  };
  return s;
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream os;
  os << "su11sim verification report (level="
     << (level == VerifyOptions::Level::quick ? "quick" : "full") << ")\n";
  for (const VerifyCheck& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  max dev " << fmt12(c.max_deviation)
       << " (tol " << fmt12(c.tolerance) << ", n=" << c.n_points << ")";
    if (!c.note.empty()) {
      os << "  " << c.note;
    }
    os << "\n";
  }
  for (const std::string& note : notes) {
    os << "note: " << note << "\n";
  }
  os << "overall: " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

struct GridPoint {
  double alpha = 0.0;
  double r = 0.0;
  double g = 1.0;
  double phi = 0.0;
  double l = 0.0;
};

// The signal-equivalence grid: g in {0.5, 1}, alpha in {0, 1, 2},
// r in {0, 0.5, 1}, theta_alpha = 0, L in {0, 0.05, 0.1},
// phi in [-3, 3] step 0.05 excluding |phi| < 1e-3.
std::vector<GridPoint> signal_grid(bool quick) {
  std::vector<GridPoint> grid;
  const double phi_step = quick ? 0.5 : 0.05;
  for (const double g : {0.5, 1.0}) {
    for (const double alpha : {0.0, 1.0, 2.0}) {
      for (const double r : {0.0, 0.5, 1.0}) {
        for (const double l : {0.0, 0.05, 0.1}) {
          for (double phi = -3.0; phi <= 3.0 + 1e-12; phi += phi_step) {
            if (std::abs(phi) < 1e-3) {
              continue;
            }
            grid.push_back({alpha, r, g, phi, l});
          }
        }
      }
    }
  }
  return grid;
}

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), std::abs(got));
  if (scale < 1e-300) {
    return 0.0;
  }
  return std::abs(got - want) / scale;
}

VerifyCheck check_gaussian_structure(bool quick) {
  VerifyCheck check;
  check.name = "gaussian-structure";
  check.tolerance = 1e-10;
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int n_samples = quick ? 20 : 100;
  double max_dev = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const InputSpec spec = InputSpec::coherent_squeezed(2.0 * u01(rng),
                                                        2.0 * M_PI * u01(rng), u01(rng));
    GaussianState state = make_input_state(spec, 2);
    const double det0 = state.cov.determinant();
    BogoliubovMap total = BogoliubovMap::identity(4);
    BogoliubovMap first = BogoliubovMap::identity(4);
    const int n_stages = 3 + static_cast<int>(u01(rng) * 3);
    GaussianState stepwise = state;
    for (int k = 0; k < n_stages; ++k) {
      BogoliubovMap stage = BogoliubovMap::identity(4);
      const double pick = u01(rng);
      if (pick < 0.4) {
        stage = stages::opa_on(4, 0, 1, 1.5 * u01(rng), 2.0 * M_PI * u01(rng));
      } else if (pick < 0.7) {
        stage = stages::phase_on(4, static_cast<int>(u01(rng) * 4), 2.0 * M_PI * u01(rng));
      } else {
        stage = stages::beamsplitter_on(4, 0, 2, u01(rng));
      }
      if (k == 0) {
        first = stage;
      }
      total = stage.after(total);
      stepwise = apply_bogoliubov(stepwise, stage);
      max_dev = std::max(max_dev, stage.metric_defect());
    }
    max_dev = std::max(max_dev, total.metric_defect());

    // Uncertainty relation after the composed lossless map.
    const GaussianState out = apply_bogoliubov(state, total);
    Eigen::MatrixXcd h = out.cov.cast<Complex>() +
                         Complex(0.0, 0.5) * symplectic_form(4).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    max_dev = std::max(max_dev, std::max(0.0, -es.eigenvalues().minCoeff()));

    // Determinant preservation and stepwise/composed agreement.
    max_dev = std::max(max_dev, std::abs(out.cov.determinant() / det0 - 1.0));
    max_dev = std::max(max_dev, (stepwise.cov - out.cov).cwiseAbs().maxCoeff());
    max_dev = std::max(max_dev, (stepwise.mean - out.mean).cwiseAbs().maxCoeff());

    // Associativity against splitting off the first stage.
    if (n_stages >= 2) {
      BogoliubovMap rest = BogoliubovMap::identity(4);
      // total = rest after first  =>  rest = total * first^{-1}; rebuild
      // instead by replaying: cheaper to check apply(apply(s, first), rest)
      // with rest accumulated directly.
      GaussianState via_first = apply_bogoliubov(state, first);
      // Recompute rest by composing the remaining stages is equivalent to
      // total * first^{-1}; use the matrix inverse here (4-mode, well
      // conditioned for these stages).
      Eigen::MatrixXcd rest_m = total.matrix() * first.matrix().inverse();
      rest = BogoliubovMap(4, rest_m);
      const GaussianState split = apply_bogoliubov(via_first, rest);
      max_dev = std::max(max_dev, (split.cov - out.cov).cwiseAbs().maxCoeff());
    }
    check.n_points += 1;
  }
  check.max_deviation = max_dev;
  check.pass = max_dev < check.tolerance;
  return check;
}

VerifyCheck check_signal_grid(const std::string& name, bool ideal_form,
                              const VerifySignals& signals, bool quick, ExecMode exec) {
  VerifyCheck check;
  check.name = name;
  check.tolerance = 1e-6;
  std::vector<GridPoint> grid = signal_grid(quick);
  if (ideal_form) {
    // The ideal expression is defined at L = 0 only; the lossy expression is
    // checked on the whole grid through the 4-mode path.
    std::erase_if(grid, [](const GridPoint& p) { return p.l > 0.0; });
  }
  std::vector<double> devs(grid.size(), 0.0);
  parallel_for(static_cast<int>(grid.size()), exec, [&](int i) {
    const GridPoint& p = grid[i];
    const InputSpec spec = InputSpec::coherent_squeezed(p.alpha, 0.0, p.r);
    const InterferometerConfig config = InterferometerConfig::balanced(p.g, p.l, p.l);
    const double pipeline =
        parity_expectation(propagate(spec, config, p.phi, !ideal_form), 1);
    const double form = ideal_form
                            ? signals.ideal_parity_signal(p.alpha, 0.0, p.r, p.g, p.phi)
                            : signals.lossy_parity_signal(p.alpha, p.r, p.g, p.phi, p.l);
    devs[i] = rel_err(form, pipeline);
  });
  check.n_points = static_cast<int>(grid.size());
  check.max_deviation = grid.empty() ? 0.0 : *std::max_element(devs.begin(), devs.end());
  check.pass = check.max_deviation < check.tolerance;
  return check;
}

VerifyCheck check_sensitivity_forms(bool quick, ExecMode exec) {
  VerifyCheck check;
  check.name = "parity-sensitivity-forms";
  check.tolerance = 1e-5;
  struct Case {
    double alpha, g, l1, l2, phi;
  };
  std::vector<Case> cases;
  const std::vector<double> phis =
      quick ? std::vector<double>{0.7, 2.0} : std::vector<double>{0.3, 0.7, 1.2, 2.0, 2.8};
  for (const double g : {0.5, 1.0}) {
    for (const double alpha : {0.0, 1.0, 2.0}) {
      for (const double l : {0.0, 0.05, 0.1}) {
        for (const double phi : phis) {
          cases.push_back({alpha, g, l, l, phi});
        }
      }
      for (const double phi : phis) {
        cases.push_back({alpha, g, 0.1, 0.03, phi});
      }
    }
  }
  std::vector<double> devs(cases.size(), 0.0);
  parallel_for(static_cast<int>(cases.size()), exec, [&](int i) {
    const Case& c = cases[i];
    const InputSpec spec =
        c.alpha == 0.0 ? InputSpec::vacuum() : InputSpec::coherent(c.alpha);
    InterferometerConfig config = InterferometerConfig::balanced(c.g, c.l1, c.l2);
    const double pipeline =
        phase_sensitivity(DetectionKind::parity(), spec, config, c.phi).delta_phi;
    double form = 0.0;
    if (c.l1 != c.l2) {
      form = cf::parity_sensitivity_coherent_unequal_lossy(c.alpha, c.g, c.l1, c.l2, c.phi);
    } else if (c.alpha == 0.0) {
      form = cf::parity_sensitivity_vacuum_lossy(c.g, c.l1, c.phi);
    } else {
      form = cf::parity_sensitivity_coherent_lossy(c.alpha, c.g, c.l1, c.phi);
    }
    devs[i] = rel_err(form, pipeline);
  });
  check.n_points = static_cast<int>(cases.size());
  check.max_deviation = *std::max_element(devs.begin(), devs.end());
  check.pass = check.max_deviation < check.tolerance;
  return check;
}

VerifyCheck check_reductions(bool quick) {
  VerifyCheck check;
  check.name = "closed-form-reductions";
  check.tolerance = 1e-9;
  double max_dev = 0.0;
  int n = 0;
  const double phi_step = quick ? 0.6 : 0.2;
  // Lossy form at L = 0 reduces to the ideal form.
  for (const double g : {0.5, 1.0}) {
    for (const double alpha : {0.0, 1.0, 2.0}) {
      for (const double r : {0.0, 0.5, 1.0}) {
        for (double phi = -3.0; phi <= 3.0 + 1e-12; phi += phi_step) {
          if (std::abs(phi) < 1e-3) {
            continue;
          }
          max_dev = std::max(
              max_dev, rel_err(cf::parity_signal_lossy_cf(alpha, r, g, phi, 0.0),
                               cf::parity_signal_ideal_cf(alpha, 0.0, r, g, phi)));
          ++n;
        }
      }
    }
  }
  // Unequal-loss sensitivity at L1 = L2 reduces to the equal-loss form:
  // 10 x 10 x 10 grid over (phi, L, (g, alpha)).
  for (int ip = 0; ip < 10; ++ip) {
    const double phi = 0.15 + 0.3 * ip;
    for (int il = 0; il < 10; ++il) {
      const double l = 0.02 + 0.03 * il;
      for (int ig = 0; ig < 10; ++ig) {
        const double g = 0.4 + 0.12 * ig;
        const double alpha = 0.25 * ig;
        max_dev = std::max(
            max_dev,
            rel_err(cf::parity_sensitivity_coherent_unequal_lossy(alpha, g, l, l, phi),
                    cf::parity_sensitivity_coherent_lossy(alpha, g, l, phi)));
        ++n;
      }
    }
  }
  check.n_points = n;
  check.max_deviation = max_dev;
  check.pass = max_dev < check.tolerance;
  return check;
}

// At theta_alpha = 0 the general-angle optimal sensitivity must equal the
// e^{2r} form exactly (sinh 2r + cosh 2r = e^{2r}).
VerifyCheck check_optimal_form_identity() {
  VerifyCheck check;
  check.name = "optimal-form-identity";
  check.tolerance = 1e-12;
  for (const double g : {0.5, 1.0, 2.0}) {
    for (const double alpha : {0.0, 1.0, 2.0}) {
      for (const double r : {0.0, 0.5, 1.0}) {
        const double general = cf::parity_sensitivity_ideal_optimal(alpha, 0.0, r, g);
        const double reduced =
            1.0 / (std::sinh(2.0 * g) *
                   std::sqrt(alpha * alpha * std::exp(2.0 * r) +
                             std::sinh(r) * std::sinh(r) + 1.0));
        check.max_deviation = std::max(check.max_deviation, rel_err(general, reduced));
        ++check.n_points;
      }
    }
  }
  check.pass = check.max_deviation < check.tolerance;
  return check;
}

VerifyCheck check_fock_oracle(const VerifyOptions& options) {
  VerifyCheck check;
  check.name = "fock-oracle-cross-check";
  check.tolerance = 1e-6;
  std::vector<fock::CrossCheckPoint> grid =
      fock::default_cross_check_grid(options.fock_cutoff);
  if (options.level == VerifyOptions::Level::quick) {
    std::vector<fock::CrossCheckPoint> sub;
    for (size_t i = 0; i < grid.size(); i += 10) {
      sub.push_back(grid[i]);
    }
    grid.swap(sub);
  }
  const fock::CrossCheckReport report = fock::cross_check(grid, 1e-6, options.exec);
  check.n_points = static_cast<int>(report.rows.size());
  check.max_deviation = report.max_reliable_deviation;
  check.pass = report.failures == 0;
  if (report.warnings > 0) {
    check.note = std::to_string(report.warnings) + " truncation warning(s)";
  }
  // A point whose tail mass breaks the oracle bound is retried at a higher
  // cutoff; it must converge onto the pipeline there.
  if (report.inconclusive > 0) {
    std::vector<fock::CrossCheckPoint> retry;
    for (const fock::CrossCheckRow& row : report.rows) {
      if (!row.pass && row.truncation_warning) {
        fock::CrossCheckPoint pt = row.point;
        pt.cutoff += 10;
        retry.push_back(pt);
      }
    }
    const fock::CrossCheckReport again = fock::cross_check(retry, 1e-6, options.exec);
    check.pass = check.pass && again.failures == 0 && again.inconclusive == 0;
    check.note += (check.note.empty() ? "" : "; ") + std::to_string(retry.size()) +
                  " truncation-limited point(s) reconverged at cutoff+10 (max dev " +
                  fmt12(again.max_deviation) + ")";
  }
  return check;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options, const VerifySignals& signals) {
  const bool quick = options.level == VerifyOptions::Level::quick;
  VerifyReport report;
  report.level = options.level;
  report.checks.push_back(check_gaussian_structure(quick));
  report.checks.push_back(
      check_signal_grid("ideal-parity-signal", true, signals, quick, options.exec));
  report.checks.push_back(
      check_signal_grid("lossy-parity-signal", false, signals, quick, options.exec));
  report.checks.push_back(check_sensitivity_forms(quick, options.exec));
  report.checks.push_back(check_reductions(quick));
  report.checks.push_back(check_optimal_form_identity());
  report.checks.push_back(check_fock_oracle(options));

  const double parity_opt = cf::parity_sensitivity_ideal_optimal(0.0, 0.0, 0.0, 1.0);
  const double qcrb =
      cf::quantum_limits(InputSpec::vacuum(), InterferometerConfig::balanced(1.0))
          .qcrb.value();
  report.notes.push_back(
      "known-tension: the ideal vacuum parity optimum and the tabulated qcrb both "
      "evaluate to 1/sinh(2g) (g=1: " +
      fmt12(parity_opt) + " vs " + fmt12(qcrb) +
      "); the comparison is reported, not asserted in either direction.");
  report.notes.push_back(
      "corrected-transcription: the ideal parity signal uses prefactor 8 and a "
      "sinh^2(4g) cos(phi) term in x1; the raw transcription "
      "(parity_signal_ideal_cf_raw) disagrees with the oracle-validated pipeline.");
  report.notes.push_back(
      "corrected-transcription: the vacuum intensity sensitivity uses a -8(1-L)^2 tail "
      "(the alpha->0 limit of the one-coherent form); the raw +8(1-L)^2 variant is "
      "retained as id_sensitivity_vacuum_lossy_raw.");
  report.notes.push_back(
      "intensity detection measures the summed photon number of both output arms; "
      "measuring one arm alone does not reproduce the reference sensitivity curves.");
  report.notes.push_back(
      "two-coherent intensity reference formula sits above the pipeline optimum and "
      "crosses the SNL near L = 0.22, while the pipeline optimum stays below the SNL "
      "past L = 0.3; both are emitted by the fig 7 data series.");
  return report;
}

}  // namespace su11
