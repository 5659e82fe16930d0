#include "su11/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "su11/parallel.hpp"

namespace su11 {

DetectionKind DetectionKind::parity(int mode) {
  DetectionKind d;
  d.kind = Kind::parity;
  d.mode = mode;
  return d;
}

DetectionKind DetectionKind::homodyne(int mode, double theta) {
  DetectionKind d;
  d.kind = Kind::homodyne;
  d.mode = mode;
  d.theta = theta;
  return d;
}

DetectionKind DetectionKind::intensity(std::vector<int> modes) {
  DetectionKind d;
  d.kind = Kind::intensity;
  d.modes = std::move(modes);
  return d;
}

std::string DetectionKind::name() const {
  switch (kind) {
    case Kind::parity:
      return "parity";
    case Kind::homodyne:
      return "homodyne";
    case Kind::intensity:
      return "intensity";
  }
  return "unknown";
}

double parity_expectation(const GaussianState& state, int mode) {
  const GaussianState m = reduce_to_mode(state, mode);
  const double a = m.cov(0, 0);
  const double b = m.cov(0, 1);
  const double c = m.cov(1, 1);
  const double det = a * c - b * b;
  if (!(det > 1e-300)) {
    throw numeric_degeneracy_error("parity_expectation: singular reduced covariance");
  }
  const double mx = m.mean(0);
  const double mp = m.mean(1);
  const double quad_form = (c * mx * mx - 2.0 * b * mx * mp + a * mp * mp) / det;
  return 0.5 / std::sqrt(det) * std::exp(-0.5 * quad_form);
}

MomentStats homodyne_stats(const GaussianState& state, int mode, double theta) {
  const GaussianState m = reduce_to_mode(state, mode);
  Eigen::Vector2d u(std::cos(theta), std::sin(theta));
  MomentStats s;
  s.mean = u.dot(m.mean);
  s.variance = u.dot(m.cov * u);
  return s;
}

MomentStats intensity_stats(const GaussianState& state, const std::vector<int>& modes) {
  if (modes.empty()) {
    throw invalid_parameter_error("intensity_stats: mode set must be nonempty");
  }
  const int k = static_cast<int>(modes.size());
  Eigen::VectorXd mu(2 * k);
  Eigen::MatrixXd sigma(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    if (modes[i] < 0 || modes[i] >= state.n_modes) {
      throw invalid_parameter_error("intensity_stats: mode index out of range");
    }
    mu.segment<2>(2 * i) = state.mean.segment<2>(2 * modes[i]);
    for (int j = 0; j < k; ++j) {
      sigma.block<2, 2>(2 * i, 2 * j) = state.cov.block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  }
  // N = (1/2) sum_q Q_q^2 - k/2 in symmetric ordering; the variance follows
  // from the Gaussian fourth moments of Q minus the ordering correction k/4.
  MomentStats s;
  s.mean = 0.5 * (sigma.trace() + mu.squaredNorm()) - 0.5 * k;
  s.variance = 0.5 * (sigma * sigma).trace() + mu.dot(sigma * mu) - 0.25 * k;
  return s;
}

MomentStats detection_stats(const GaussianState& state, const DetectionKind& det) {
  switch (det.kind) {
    case DetectionKind::Kind::parity: {
      const double p = parity_expectation(state, det.mode);
      return {p, std::max(0.0, 1.0 - p * p)};
    }
    case DetectionKind::Kind::homodyne:
      return homodyne_stats(state, det.mode, det.theta);
    case DetectionKind::Kind::intensity:
      return intensity_stats(state, det.modes);
  }
  throw invalid_parameter_error("detection_stats: unknown detection kind");
}

namespace {

// Bundles the fixed input state and the phi-parameterized transfer so that a
// sensitivity evaluation costs five small matrix products, not a rebuild.
class SignalEvaluator {
public:
  SignalEvaluator(const DetectionKind& det, const InputSpec& spec,
                  const InterferometerConfig& config)
      : det_(det),
        input_(make_input_state(spec, config.has_loss() ? 2 : 0)),
        builder_(config, config.has_loss()) {}

  MomentStats stats(double phi) const {
    return detection_stats(apply_bogoliubov(input_, builder_.at(phi)), det_);
  }

  double mean(double phi) const { return stats(phi).mean; }

  // Central difference with a Richardson step when the h and h/2 estimates
  // disagree by more than 1e-6 relative.
  double derivative(double phi) const {
    const double h = 1e-6 * std::max(1.0, std::abs(phi));
    const double d_h = (mean(phi + h) - mean(phi - h)) / (2.0 * h);
    const double d_h2 = (mean(phi + 0.5 * h) - mean(phi - 0.5 * h)) / h;
    if (std::abs(d_h - d_h2) > 1e-6 * std::abs(d_h2)) {
      return (4.0 * d_h2 - d_h) / 3.0;
    }
    return d_h2;
  }

  // Sensitivity at phi, +inf where the signal is stationary or the value is
  // not finite.
  double delta_phi_or_inf(double phi) const {
    const double deriv = derivative(phi);
    if (std::abs(deriv) <= 1e-14) {
      return std::numeric_limits<double>::infinity();
    }
    const double var = std::max(0.0, stats(phi).variance);
    const double value = std::sqrt(var) / std::abs(deriv);
    return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
  }

private:
  DetectionKind det_;
  GaussianState input_;
  TransferBuilder builder_;
};

}  // namespace

std::function<double(double)> signal_function(const DetectionKind& det,
                                              const InputSpec& spec,
                                              const InterferometerConfig& config) {
  auto eval = std::make_shared<SignalEvaluator>(det, spec, config);
  return [eval](double phi) { return eval->mean(phi); };
}

SensitivityResult phase_sensitivity(const DetectionKind& det, const InputSpec& spec,
                                    const InterferometerConfig& config, double phi) {
  const SignalEvaluator eval(det, spec, config);
  const MomentStats stats = eval.stats(phi);
  const double deriv = eval.derivative(phi);
  if (std::abs(deriv) <= 1e-14) {
    throw derivative_underflow_error(
        "phase_sensitivity: signal is stationary at phi = " + std::to_string(phi) + " (" +
            det.name() + "), derivative magnitude " + std::to_string(std::abs(deriv)),
        std::abs(deriv));
  }
  SensitivityResult res;
  res.phi = phi;
  res.detection = det;
  res.signal = stats.mean;
  res.signal_variance = stats.variance;
  res.delta_phi = std::sqrt(std::max(0.0, stats.variance)) / std::abs(deriv);
  return res;
}

OptimalSensitivity optimal_sensitivity(const DetectionKind& det, const InputSpec& spec,
                                       const InterferometerConfig& config,
                                       const PhiWindow& window) {
  if (!(window.lo < window.hi)) {
    throw invalid_parameter_error("optimal_sensitivity: empty phi window");
  }
  constexpr double kGridStep = 1e-3;
  constexpr double kPhiTol = 1e-8;

  const SignalEvaluator eval(det, spec, config);
  const int n = std::max(2, static_cast<int>((window.hi - window.lo) / kGridStep) + 1);
  std::vector<double> phis(n), values(n);
  for (int i = 0; i < n; ++i) {
    phis[i] = window.lo + (window.hi - window.lo) * i / (n - 1);
  }
  parallel_for(n, ExecMode::openmp,
               [&](int i) { values[i] = eval.delta_phi_or_inf(phis[i]); });

  int best = -1;
  for (int i = 0; i < n; ++i) {
    if (std::isfinite(values[i]) && (best < 0 || values[i] < values[best])) {
      best = i;
    }
  }
  if (best < 0) {
    throw search_failure_error("optimal_sensitivity: no finite minimum in window");
  }

  double a = phis[std::max(0, best - 1)];
  double b = phis[std::min(n - 1, best + 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = eval.delta_phi_or_inf(c);
  double fd = eval.delta_phi_or_inf(d);
  while (b - a > kPhiTol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = eval.delta_phi_or_inf(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = eval.delta_phi_or_inf(d);
    }
  }
  OptimalSensitivity res;
  res.phi_opt = 0.5 * (a + b);
  res.delta_phi = eval.delta_phi_or_inf(res.phi_opt);
  if (!std::isfinite(res.delta_phi)) {
    res.phi_opt = phis[best];
    res.delta_phi = values[best];
  }
  return res;
}

}  // namespace su11
