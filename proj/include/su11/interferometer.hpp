#pragma once

#include "su11/gaussian.hpp"

namespace su11 {

// Two OPA stages with a phase shift on arm a between them. Losses L1 (arm a,
// the phase-sensing arm) and L2 (arm b) act between the phase shift and the
// second OPA, each modeled as a beam splitter into a vacuum ancilla.
struct InterferometerConfig {
  double g1 = 1.0;
  double g2 = 1.0;
  double theta1 = 0.0;
  double theta2 = M_PI;
  double l1 = 0.0;
  double l2 = 0.0;

  // g1 = g2 = g, theta1 = 0, theta2 = pi: the second OPA undoes the first
  // at phi = 0.
  static InterferometerConfig balanced(double g, double l1 = 0.0, double l2 = 0.0);

  bool has_loss() const { return l1 > 0.0 || l2 > 0.0; }
  void validate() const;
};

// Photon budget inside the interferometer.
//   n_opa = 2 sinh^2 g      (spontaneous pair emission of the first OPA)
//   n_in  = N_alpha + N_s   (mean input photon number)
//   n_tot = (n_opa + 1) n_in + n_opa
struct PhotonBudget {
  double n_opa = 0.0;
  double n_in = 0.0;
  double n_tot = 0.0;
};

// 2-mode OPA block [[u, v], [v*, u]] on (alpha, beta*) with u = cosh g,
// v = e^{i theta} sinh g.
BogoliubovMap opa_map(double g, double theta);

// 2-mode phase shift diag(e^{i phi}, 1) on (alpha, beta*).
BogoliubovMap phase_map(double phi);

// 4-mode loss stage: arm a mixes with ancilla v_a by (sqrt(1-L1), sqrt(L1)),
// arm b with v_b by (sqrt(1-L2), sqrt(L2)). Mode order (a, b, v_a, v_b).
BogoliubovMap loss_map(double l1, double l2);

// Full transfer map in physical propagation order OPA1 -> phase -> loss ->
// OPA2. `lossy` selects the 4-mode map (arms + ancillas); with L1 = L2 = 0
// its arm block equals the ideal 2-mode map.
BogoliubovMap build_transfer(const InterferometerConfig& config, double phi, bool lossy);

// Output state for the given input. 4 modes on the lossy path, 2 on the
// ideal path; ancillas are kept in the state and ignored at detection.
GaussianState propagate(const InputSpec& spec, const InterferometerConfig& config,
                        double phi, bool lossy);
GaussianState propagate(const InputSpec& spec, const InterferometerConfig& config,
                        double phi);

PhotonBudget photon_budget(const InputSpec& spec, const InterferometerConfig& config);

// Phi-parameterized transfer with the phi-independent stages precomposed;
// `at(phi)` costs one diagonal scale and two small matrix products. Used by
// the sensitivity machinery, which evaluates many phases per configuration.
class TransferBuilder {
public:
  TransferBuilder(const InterferometerConfig& config, bool lossy);

  int n_modes() const { return n_; }
  BogoliubovMap at(double phi) const;

private:
  int n_;
  Eigen::MatrixXcd left_;   // (loss then) second OPA
  Eigen::MatrixXcd right_;  // first OPA
};

namespace stages {
// Stage builders embedded into an n-mode map; used to assemble transfers and
// to generate random metric-preserving maps in tests.
BogoliubovMap opa_on(int n_modes, int mode_i, int mode_j, double g, double theta);
BogoliubovMap phase_on(int n_modes, int mode, double phi);
BogoliubovMap beamsplitter_on(int n_modes, int mode_i, int mode_j, double loss);
}  // namespace stages

}  // namespace su11
