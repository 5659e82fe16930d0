#pragma once

#include <functional>
#include <string>
#include <vector>

#include "su11/interferometer.hpp"

namespace su11 {

// Detection scheme applied to the interferometer output.
//  - parity: (-1)^N on one output mode (default: mode b).
//  - homodyne: quadrature X(theta) of one output mode (default: mode b,
//    theta = 0).
//  - intensity: total photon number over a mode set (default: both output
//    arms; the output intensity difference carries no phase information
//    here, photons being created and destroyed in pairs).
struct DetectionKind {
  enum class Kind { parity, homodyne, intensity };

  Kind kind = Kind::parity;
  int mode = 1;
  double theta = 0.0;
  std::vector<int> modes = {0, 1};

  static DetectionKind parity(int mode = 1);
  static DetectionKind homodyne(int mode = 1, double theta = 0.0);
  static DetectionKind intensity(std::vector<int> modes = {0, 1});

  std::string name() const;
};

struct SensitivityResult {
  double phi = 0.0;
  double delta_phi = 0.0;
  DetectionKind detection;
  double signal = 0.0;
  double signal_variance = 0.0;
};

struct MomentStats {
  double mean = 0.0;
  double variance = 0.0;
};

// <Pi> = (1/(2 sqrt(det Sigma_m))) exp(-(1/2) mu_m^T Sigma_m^-1 mu_m) from the
// mode's reduced covariance/mean; equals (pi/2) times the marginal Wigner
// function at the phase-space origin. Always in [-1, 1] for physical states.
double parity_expectation(const GaussianState& state, int mode);

// Mean and variance of X(theta) for one mode.
MomentStats homodyne_stats(const GaussianState& state, int mode, double theta);

// Mean and variance of the total photon number over `modes`, including
// cross-mode covariances in the fourth-moment (Wick) expansion.
MomentStats intensity_stats(const GaussianState& state, const std::vector<int>& modes);

// Signal mean/variance of a detection applied to a propagated output state.
MomentStats detection_stats(const GaussianState& state, const DetectionKind& det);

// Error-propagation sensitivity at a single phase:
//   delta_phi = sqrt(Var signal) / |d<signal>/d phi|.
// Parity variance uses the exact identity 1 - <Pi>^2. The derivative is a
// central finite difference (h = 1e-6 max(1,|phi|)) with Richardson
// refinement when the half-step estimates disagree. Throws
// derivative_underflow_error at stationary points of the signal.
SensitivityResult phase_sensitivity(const DetectionKind& det, const InputSpec& spec,
                                    const InterferometerConfig& config, double phi);

struct PhiWindow {
  double lo = 1e-6;
  double hi = M_PI - 1e-6;
};

struct OptimalSensitivity {
  double phi_opt = 0.0;
  double delta_phi = 0.0;
};

// Minimize delta_phi over the window: dense grid (step 1e-3 rad) followed by
// golden-section refinement to 1e-8 in phi. Grid points where the sensitivity
// is singular are skipped; if nothing evaluates, throws search_failure_error.
OptimalSensitivity optimal_sensitivity(const DetectionKind& det, const InputSpec& spec,
                                       const InterferometerConfig& config,
                                       const PhiWindow& window = {});

// The phi -> signal map used by the sensitivity machinery, with the transfer
// factored so that only the phase stage is rebuilt per evaluation.
std::function<double(double)> signal_function(const DetectionKind& det,
                                              const InputSpec& spec,
                                              const InterferometerConfig& config);

}  // namespace su11
