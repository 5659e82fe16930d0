#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "su11/errors.hpp"

namespace su11 {

using Complex = std::complex<double>;

// Multimode bosonic Gaussian state in quadrature coordinates.
//
// Quadratures are ordered (X1, P1, X2, P2, ...) with X = (a + a^dag)/sqrt(2),
// so a vacuum mode has mean 0 and covariance (1/2) I.
struct GaussianState {
  int n_modes = 0;
  Eigen::VectorXd mean;  // length 2 n_modes
  Eigen::MatrixXd cov;   // 2n x 2n, symmetric

  static GaussianState vacuum(int n_modes);

  // Throws invalid_parameter_error if the covariance is not symmetric
  // (1e-12 absolute) or violates the uncertainty relation: the smallest
  // eigenvalue of cov + (i/2) Omega must be >= -1e-10.
  void validate() const;
};

// Standard symplectic form for the (X1, P1, ...) ordering.
Eigen::MatrixXd symplectic_form(int n_modes);

// Linear map on stacked mode amplitudes (a1, a1^dag, a2, a2^dag, ...).
// An n-mode map is a 2n x 2n complex matrix; the cached real 2n x 2n
// quadrature representation is what actually hits means and covariances.
class BogoliubovMap {
public:
  BogoliubovMap(int n_modes, Eigen::MatrixXcd matrix);

  static BogoliubovMap identity(int n_modes);

  int n_modes() const { return n_modes_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  const Eigen::MatrixXd& quadrature_map() const { return quad_; }

  // Composition in application order: (*this after first).
  BogoliubovMap after(const BogoliubovMap& first) const;

  // Max |M Lambda M^dag - Lambda| with Lambda = diag(+1,-1,...), the bosonic
  // commutation metric in the interleaved (a, a^dag) ordering.
  double metric_defect() const;

private:
  int n_modes_;
  Eigen::MatrixXcd matrix_;
  Eigen::MatrixXd quad_;
};

// Which state enters the interferometer.
struct InputSpec {
  enum class Kind { vacuum, coherent, coherent_squeezed, two_coherent };

  Kind kind = Kind::vacuum;
  double alpha_mag = 0.0;    // |alpha_0|
  double theta_alpha = 0.0;  // phase of alpha_0
  double r = 0.0;            // squeezing strength
  double theta_s = 0.0;      // squeezing phase (0 throughout the analysis)

  static InputSpec vacuum() { return {}; }
  static InputSpec coherent(double alpha_mag, double theta_alpha = 0.0);
  static InputSpec coherent_squeezed(double alpha_mag, double theta_alpha, double r,
                                     double theta_s = 0.0);
  static InputSpec two_coherent(double alpha_mag, double theta_alpha = 0.0);

  // Mean photon numbers of the input: N_alpha = |alpha_0|^2, N_s = sinh^2 r.
  double n_alpha() const;
  double n_squeezed() const;

  std::string kind_name() const;
  static Kind parse_kind(const std::string& name);
};

// Product state: mode 0 = coherent(alpha_0), mode 1 = squeezed vacuum(r),
// then `ancilla_vacua` extra vacuum modes. The two-coherent kind places
// i alpha_0/sqrt(2) on mode 0 and alpha_0/sqrt(2) on mode 1.
GaussianState make_input_state(const InputSpec& spec, int ancilla_vacua);

GaussianState apply_bogoliubov(const GaussianState& state, const BogoliubovMap& map);

// Marginal of a single mode (2x2 covariance block + mean sub-vector).
GaussianState reduce_to_mode(const GaussianState& state, int mode);

// Wigner function as a normalized Gaussian density over the quadrature
// coordinates: (2 pi)^-n det(cov)^(-1/2) exp(-(1/2) d^T cov^-1 d).
double wigner_value(const GaussianState& state, const Eigen::VectorXd& point);

}  // namespace su11
