#include "su11/gaussian.hpp"

#include <cmath>

namespace su11 {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kUncertaintyTol = 1e-10;

// Per-mode change of basis (a, a^dag) = U (X, P).
Eigen::Matrix2cd amplitude_from_quadrature() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << Complex(s, 0), Complex(0, s), Complex(s, 0), Complex(0, -s);
  return u;
}

Eigen::MatrixXcd basis_change(int n_modes) {
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * n_modes, 2 * n_modes);
  const Eigen::Matrix2cd u = amplitude_from_quadrature();
  for (int m = 0; m < n_modes; ++m) {
    w.block<2, 2>(2 * m, 2 * m) = u;
  }
  return w;
}

}  // namespace

GaussianState GaussianState::vacuum(int n_modes) {
  if (n_modes <= 0) {
    throw invalid_parameter_error("vacuum: n_modes must be positive");
  }
  GaussianState s;
  s.n_modes = n_modes;
  s.mean = Eigen::VectorXd::Zero(2 * n_modes);
  s.cov = 0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
  return s;
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

void GaussianState::validate() const {
  if (n_modes <= 0 || mean.size() != 2 * n_modes || cov.rows() != 2 * n_modes ||
      cov.cols() != 2 * n_modes) {
    throw invalid_parameter_error("GaussianState: inconsistent dimensions");
  }
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol) {
    throw invalid_parameter_error("GaussianState: covariance not symmetric, defect " +
                                  std::to_string(asym));
  }
  Eigen::MatrixXcd h = cov.cast<Complex>() +
                       Complex(0.0, 0.5) * symplectic_form(n_modes).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -kUncertaintyTol) {
    throw invalid_parameter_error("GaussianState: uncertainty relation violated, "
                                  "min eigenvalue " + std::to_string(lambda_min));
  }
}

BogoliubovMap::BogoliubovMap(int n_modes, Eigen::MatrixXcd matrix)
    : n_modes_(n_modes), matrix_(std::move(matrix)) {
  if (n_modes_ <= 0 || matrix_.rows() != 2 * n_modes_ || matrix_.cols() != 2 * n_modes_) {
    throw invalid_parameter_error("BogoliubovMap: matrix must be 2n x 2n");
  }
  const Eigen::MatrixXcd w = basis_change(n_modes_);
  const Eigen::MatrixXcd r = w.adjoint() * matrix_ * w;
  const double imag_defect = r.imag().cwiseAbs().maxCoeff();
  if (imag_defect > 1e-10) {
    // A map without the paired (a, a^dag) conjugation structure has no real
    // quadrature action.
    throw invalid_parameter_error("BogoliubovMap: matrix lacks conjugation symmetry, "
                                  "imaginary defect " + std::to_string(imag_defect));
  }
  quad_ = r.real();
}

BogoliubovMap BogoliubovMap::identity(int n_modes) {
  return BogoliubovMap(n_modes, Eigen::MatrixXcd::Identity(2 * n_modes, 2 * n_modes));
}

BogoliubovMap BogoliubovMap::after(const BogoliubovMap& first) const {
  if (n_modes_ != first.n_modes_) {
    throw invalid_parameter_error("BogoliubovMap::after: mode count mismatch");
  }
  return BogoliubovMap(n_modes_, matrix_ * first.matrix_);
}

double BogoliubovMap::metric_defect() const {
  Eigen::VectorXcd lambda(2 * n_modes_);
  for (int m = 0; m < n_modes_; ++m) {
    lambda(2 * m) = 1.0;
    lambda(2 * m + 1) = -1.0;
  }
  const Eigen::MatrixXcd lhs = matrix_ * lambda.asDiagonal() * matrix_.adjoint();
  return (lhs - Eigen::MatrixXcd(lambda.asDiagonal())).cwiseAbs().maxCoeff();
}

InputSpec InputSpec::coherent(double alpha_mag, double theta_alpha) {
  InputSpec s;
  s.kind = Kind::coherent;
  s.alpha_mag = alpha_mag;
  s.theta_alpha = theta_alpha;
  return s;
}

InputSpec InputSpec::coherent_squeezed(double alpha_mag, double theta_alpha, double r,
                                       double theta_s) {
  InputSpec s;
  s.kind = Kind::coherent_squeezed;
  s.alpha_mag = alpha_mag;
  s.theta_alpha = theta_alpha;
  s.r = r;
  s.theta_s = theta_s;
  return s;
}

InputSpec InputSpec::two_coherent(double alpha_mag, double theta_alpha) {
  InputSpec s;
  s.kind = Kind::two_coherent;
  s.alpha_mag = alpha_mag;
  s.theta_alpha = theta_alpha;
  return s;
}

double InputSpec::n_alpha() const {
  return kind == Kind::vacuum ? 0.0 : alpha_mag * alpha_mag;
}

double InputSpec::n_squeezed() const {
  return kind == Kind::coherent_squeezed ? std::sinh(r) * std::sinh(r) : 0.0;
}

std::string InputSpec::kind_name() const {
  switch (kind) {
    case Kind::vacuum:
      return "vacuum";
    case Kind::coherent:
      return "coherent";
    case Kind::coherent_squeezed:
      return "coherent-squeezed";
    case Kind::two_coherent:
      return "two-coherent";
  }
  return "unknown";
}

InputSpec::Kind InputSpec::parse_kind(const std::string& name) {
  if (name == "vacuum") return Kind::vacuum;
  if (name == "coherent") return Kind::coherent;
  if (name == "coherent-squeezed") return Kind::coherent_squeezed;
  if (name == "two-coherent") return Kind::two_coherent;
  throw invalid_parameter_error("unknown input kind: " + name);
}

namespace {

void set_coherent_mean(GaussianState& state, int mode, Complex amplitude) {
  state.mean(2 * mode) = std::sqrt(2.0) * amplitude.real();
  state.mean(2 * mode + 1) = std::sqrt(2.0) * amplitude.imag();
}

// Squeezed vacuum covariance with Var X = e^{2r}/2 at theta_s = 0; a nonzero
// theta_s rotates the squeezing axes by theta_s/2.
Eigen::Matrix2d squeezed_cov(double r, double theta_s) {
  Eigen::Matrix2d d;
  d << 0.5 * std::exp(2.0 * r), 0.0, 0.0, 0.5 * std::exp(-2.0 * r);
  const double half = 0.5 * theta_s;
  Eigen::Matrix2d rot;
  rot << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
  return rot * d * rot.transpose();
}

}  // namespace

GaussianState make_input_state(const InputSpec& spec, int ancilla_vacua) {
  if (spec.r < 0.0) {
    throw invalid_parameter_error("make_input_state: squeezing r must be >= 0");
  }
  if (ancilla_vacua < 0) {
    throw invalid_parameter_error("make_input_state: ancilla count must be >= 0");
  }
  GaussianState state = GaussianState::vacuum(2 + ancilla_vacua);
  const Complex alpha0 = std::polar(spec.alpha_mag, spec.theta_alpha);
  switch (spec.kind) {
    case InputSpec::Kind::vacuum:
      break;
    case InputSpec::Kind::coherent:
      set_coherent_mean(state, 0, alpha0);
      break;
    case InputSpec::Kind::coherent_squeezed:
      set_coherent_mean(state, 0, alpha0);
      state.cov.block<2, 2>(2, 2) = squeezed_cov(spec.r, spec.theta_s);
      break;
    case InputSpec::Kind::two_coherent:
      set_coherent_mean(state, 0, Complex(0.0, 1.0) * alpha0 / std::sqrt(2.0));
      set_coherent_mean(state, 1, alpha0 / std::sqrt(2.0));
      break;
  }
  return state;
}

GaussianState apply_bogoliubov(const GaussianState& state, const BogoliubovMap& map) {
  if (state.n_modes != map.n_modes()) {
    throw invalid_parameter_error("apply_bogoliubov: mode count mismatch");
  }
  const Eigen::MatrixXd& r = map.quadrature_map();
  GaussianState out;
  out.n_modes = state.n_modes;
  out.mean = r * state.mean;
  out.cov = r * state.cov * r.transpose();
  return out;
}

GaussianState reduce_to_mode(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.n_modes) {
    throw invalid_parameter_error("reduce_to_mode: mode index out of range");
  }
  GaussianState out;
  out.n_modes = 1;
  out.mean = state.mean.segment<2>(2 * mode);
  out.cov = state.cov.block<2, 2>(2 * mode, 2 * mode);
  return out;
}

double wigner_value(const GaussianState& state, const Eigen::VectorXd& point) {
  if (point.size() != 2 * state.n_modes) {
    throw invalid_parameter_error("wigner_value: point has wrong dimension");
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(state.cov);
  const double det = state.cov.determinant();
  if (!(det > 1e-300) || ldlt.info() != Eigen::Success) {
    throw numeric_degeneracy_error("wigner_value: singular covariance");
  }
  const Eigen::VectorXd d = point - state.mean;
  const double quad_form = d.dot(ldlt.solve(d));
  const double norm = std::pow(2.0 * M_PI, -state.n_modes) / std::sqrt(det);
  return norm * std::exp(-0.5 * quad_form);
}

}  // namespace su11
