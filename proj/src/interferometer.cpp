#include "su11/interferometer.hpp"

#include <cmath>

namespace su11 {

InterferometerConfig InterferometerConfig::balanced(double g, double l1, double l2) {
  InterferometerConfig c;
  c.g1 = g;
  c.g2 = g;
  c.theta1 = 0.0;
  c.theta2 = M_PI;
  c.l1 = l1;
  c.l2 = l2;
  return c;
}

void InterferometerConfig::validate() const {
  if (g1 < 0.0 || g2 < 0.0) {
    throw invalid_parameter_error("InterferometerConfig: OPA strength must be >= 0");
  }
  if (l1 < 0.0 || l1 > 1.0 || l2 < 0.0 || l2 > 1.0) {
    throw invalid_parameter_error("InterferometerConfig: losses must lie in [0, 1]");
  }
}

namespace stages {

BogoliubovMap opa_on(int n_modes, int mode_i, int mode_j, double g, double theta) {
  if (g < 0.0) {
    throw invalid_parameter_error("opa_on: g must be >= 0");
  }
  const double u = std::cosh(g);
  const Complex v = std::polar(std::sinh(g), theta);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes);
  // a_i -> u a_i + v a_j^dag and symmetrically for a_j.
  m(2 * mode_i, 2 * mode_i) = u;
  m(2 * mode_i, 2 * mode_j + 1) = v;
  m(2 * mode_i + 1, 2 * mode_i + 1) = u;
  m(2 * mode_i + 1, 2 * mode_j) = std::conj(v);
  m(2 * mode_j, 2 * mode_j) = u;
  m(2 * mode_j, 2 * mode_i + 1) = v;
  m(2 * mode_j + 1, 2 * mode_j + 1) = u;
  m(2 * mode_j + 1, 2 * mode_i) = std::conj(v);
  return BogoliubovMap(n_modes, std::move(m));
}

BogoliubovMap phase_on(int n_modes, int mode, double phi) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes);
  m(2 * mode, 2 * mode) = std::polar(1.0, phi);
  m(2 * mode + 1, 2 * mode + 1) = std::polar(1.0, -phi);
  return BogoliubovMap(n_modes, std::move(m));
}

BogoliubovMap beamsplitter_on(int n_modes, int mode_i, int mode_j, double loss) {
  if (loss < 0.0 || loss > 1.0) {
    throw invalid_parameter_error("beamsplitter_on: loss must lie in [0, 1]");
  }
  const double t = std::sqrt(1.0 - loss);
  const double s = std::sqrt(loss);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes);
  // Orthogonal convention: the reflected port picks up the minus sign, which
  // keeps the enlarged map metric-preserving. The arm amplitudes are
  // (sqrt(1-L), sqrt(L)) either way, and the ancilla is discarded at
  // detection, so the sign is unobservable downstream.
  for (int c = 0; c < 2; ++c) {
    m(2 * mode_i + c, 2 * mode_i + c) = t;
    m(2 * mode_i + c, 2 * mode_j + c) = s;
    m(2 * mode_j + c, 2 * mode_i + c) = -s;
    m(2 * mode_j + c, 2 * mode_j + c) = t;
  }
  return BogoliubovMap(n_modes, std::move(m));
}

}  // namespace stages

BogoliubovMap opa_map(double g, double theta) { return stages::opa_on(2, 0, 1, g, theta); }

BogoliubovMap phase_map(double phi) { return stages::phase_on(2, 0, phi); }

BogoliubovMap loss_map(double l1, double l2) {
  return stages::beamsplitter_on(4, 1, 3, l2).after(stages::beamsplitter_on(4, 0, 2, l1));
}

BogoliubovMap build_transfer(const InterferometerConfig& config, double phi, bool lossy) {
  config.validate();
  const int n = lossy ? 4 : 2;
  BogoliubovMap m = stages::opa_on(n, 0, 1, config.g1, config.theta1);
  m = stages::phase_on(n, 0, phi).after(m);
  if (lossy) {
    m = loss_map(config.l1, config.l2).after(m);
  }
  return stages::opa_on(n, 0, 1, config.g2, config.theta2).after(m);
}

GaussianState propagate(const InputSpec& spec, const InterferometerConfig& config,
                        double phi, bool lossy) {
  const GaussianState in = make_input_state(spec, lossy ? 2 : 0);
  return apply_bogoliubov(in, build_transfer(config, phi, lossy));
}

GaussianState propagate(const InputSpec& spec, const InterferometerConfig& config,
                        double phi) {
  return propagate(spec, config, phi, config.has_loss());
}

TransferBuilder::TransferBuilder(const InterferometerConfig& config, bool lossy)
    : n_(lossy ? 4 : 2) {
  config.validate();
  right_ = stages::opa_on(n_, 0, 1, config.g1, config.theta1).matrix();
  left_ = stages::opa_on(n_, 0, 1, config.g2, config.theta2).matrix();
  if (lossy) {
    left_ = left_ * loss_map(config.l1, config.l2).matrix();
  }
}

BogoliubovMap TransferBuilder::at(double phi) const {
  Eigen::VectorXcd phase = Eigen::VectorXcd::Ones(2 * n_);
  phase(0) = std::polar(1.0, phi);
  phase(1) = std::polar(1.0, -phi);
  return BogoliubovMap(n_, left_ * phase.asDiagonal() * right_);
}

PhotonBudget photon_budget(const InputSpec& spec, const InterferometerConfig& config) {
  config.validate();
  const double sh = std::sinh(config.g1);
  PhotonBudget b;
  b.n_opa = 2.0 * sh * sh;
  b.n_in = spec.n_alpha() + spec.n_squeezed();
  b.n_tot = (b.n_opa + 1.0) * b.n_in + b.n_opa;
  return b;
}

}  // namespace su11
