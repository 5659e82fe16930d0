#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "su11/closed_forms.hpp"
#include "su11/detection.hpp"
#include "su11/parallel.hpp"

namespace su11 {

// One-variable parameter sweep. phi sweeps report the pointwise sensitivity;
// loss and n_tot sweeps report the optimal sensitivity (full phase search)
// at each grid point.
struct SweepRequest {
  enum class Variable { phi, loss, ntot_via_g, ntot_via_alpha };

  Variable variable = Variable::phi;
  double from = -3.0;
  double to = 3.0;
  double step = 0.05;
  InputSpec spec;
  InterferometerConfig config;
  std::vector<DetectionKind> detections = {DetectionKind::parity()};

  void validate() const;
  std::string variable_name() const;
};

struct SweepRow {
  double value = 0.0;  // swept variable (phi sweeps) or derived N_tot
  std::string detection;
  double phi = 0.0;  // evaluation phase (phi for phi sweeps, phi_opt otherwise)
  double signal = 0.0;
  double signal_variance = 0.0;
  double delta_phi = 0.0;
  bool diverged = false;
  double snl = 0.0;
  double hl = 0.0;
  std::optional<double> qcrb;
};

struct SweepResult {
  SweepRequest request;
  std::vector<SweepRow> rows;
};

SweepResult run_sweep(const SweepRequest& req, ExecMode mode = ExecMode::openmp);

// Deterministic CSV: '#'-prefixed metadata lines carrying the full parameter
// set, a header row, 12-significant-digit values. Divergent points keep
// their row with an empty delta_phi cell and diverged=1.
void write_sweep_csv(const SweepResult& result, std::ostream& os);

// Default optimal-search window: for inputs whose parity/intensity signals
// are even in phi (everything except two-coherent and theta_alpha != 0) the
// positive half-axis suffices; otherwise both signs are searched. The 1e-6
// padding keeps the grid off the singular points {0, +-pi}.
PhiWindow default_window(const InputSpec& spec);

// Largest loss (L1 = L2 = L) at which the optimal sensitivity still equals
// the SNL, by bisection on [0, 0.5] to |dL| < 1e-4; every evaluation runs
// the full optimal-phase search. Throws search_failure_error when the
// lossless optimum does not beat the SNL (no crossing).
double critical_loss(const InputSpec& spec, const InterferometerConfig& config,
                     const DetectionKind& det = DetectionKind::parity(),
                     double tol = 1e-4);

// Emit the data series behind one of the study figures (3..8) as CSV files
// under out_dir; returns the file paths written.
std::vector<std::string> write_figure(int figure, const std::string& out_dir,
                                      ExecMode mode = ExecMode::openmp);

// 12-significant-digit float formatting used by every CSV writer.
std::string fmt12(double v);

}  // namespace su11
