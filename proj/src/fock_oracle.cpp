#include "su11/fock_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace su11 {
namespace fock {

namespace {

// Truncated coherent-state amplitudes c_n = e^{-|a|^2/2} a^n / sqrt(n!).
Eigen::VectorXcd coherent_amplitudes(Complex alpha, int dim) {
  Eigen::VectorXcd c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) {
    c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  return c;
}

// Squeezed vacuum with the X quadrature anti-squeezed at theta_s = 0
// (Var X = e^{2r}/2): c_{2n} = (cosh r)^{-1/2} (e^{i theta_s} tanh r)^n
// sqrt((2n)!)/(2^n n!).
Eigen::VectorXcd squeezed_amplitudes(double r, double theta_s, int dim) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  const Complex x = std::polar(std::tanh(r), theta_s);
  for (int n = 0; 2 * (n + 1) < dim; ++n) {
    c(2 * (n + 1)) = c(2 * n) * x *
                     std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0)) / (2.0 * (n + 1.0));
  }
  return c;
}

Eigen::VectorXcd input_vector(const InputSpec& spec, int dim) {
  const Complex alpha0 = std::polar(spec.alpha_mag, spec.theta_alpha);
  Eigen::VectorXcd a;
  Eigen::VectorXcd b;
  switch (spec.kind) {
    case InputSpec::Kind::vacuum:
      a = coherent_amplitudes(0.0, dim);
      b = coherent_amplitudes(0.0, dim);
      break;
    case InputSpec::Kind::coherent:
      a = coherent_amplitudes(alpha0, dim);
      b = coherent_amplitudes(0.0, dim);
      break;
    case InputSpec::Kind::coherent_squeezed:
      if (spec.r < 0.0) {
        throw invalid_parameter_error("oracle: squeezing r must be >= 0");
      }
      a = coherent_amplitudes(alpha0, dim);
      b = squeezed_amplitudes(spec.r, spec.theta_s, dim);
      break;
    case InputSpec::Kind::two_coherent:
      a = coherent_amplitudes(Complex(0.0, 1.0) * alpha0 / std::sqrt(2.0), dim);
      b = coherent_amplitudes(alpha0 / std::sqrt(2.0), dim);
      break;
  }
  Eigen::VectorXcd psi(dim * dim);
  for (int na = 0; na < dim; ++na) {
    psi.segment(na * dim, dim) = a(na) * b;
  }
  return psi;
}

// exp(g e^{i theta} a^dag b^dag - g e^{-i theta} a b), block-diagonal over
// the photon-number difference n_a - n_b.
struct TwoModeSqueezeUnitary {
  std::vector<Eigen::VectorXi> sector_indices;
  std::vector<Eigen::MatrixXcd> sector_blocks;

  TwoModeSqueezeUnitary(double g, double theta, int dim) {
    const Complex zeta = std::polar(g, theta);
    for (int delta = -(dim - 1); delta <= dim - 1; ++delta) {
      const int size = dim - std::abs(delta);
      Eigen::VectorXi idx(size);
      for (int k = 0; k < size; ++k) {
        const int nb = delta >= 0 ? k : k - delta;
        const int na = nb + delta;
        idx(k) = na * dim + nb;
      }
      Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
      for (int k = 0; k + 1 < size; ++k) {
        const int nb = delta >= 0 ? k : k - delta;
        const int na = nb + delta;
        const Complex g_elem =
            -Complex(0.0, 1.0) * zeta * std::sqrt((na + 1.0) * (nb + 1.0));
        h(k + 1, k) = g_elem;
        h(k, k + 1) = std::conj(g_elem);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
      const Eigen::VectorXcd phases =
          (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
      sector_indices.push_back(std::move(idx));
      sector_blocks.push_back(es.eigenvectors() * phases.asDiagonal() *
                              es.eigenvectors().adjoint());
    }
  }

  void apply(Eigen::VectorXcd& psi) const {
    for (size_t s = 0; s < sector_blocks.size(); ++s) {
      psi(sector_indices[s]) = (sector_blocks[s] * psi(sector_indices[s])).eval();
    }
  }

  void apply(Eigen::MatrixXcd& rho) const {
    for (size_t s = 0; s < sector_blocks.size(); ++s) {
      rho(sector_indices[s], Eigen::all) =
          (sector_blocks[s] * rho(sector_indices[s], Eigen::all)).eval();
    }
    for (size_t s = 0; s < sector_blocks.size(); ++s) {
      rho(Eigen::all, sector_indices[s]) =
          (rho(Eigen::all, sector_indices[s]) * sector_blocks[s].adjoint()).eval();
    }
  }
};

// Binomial damping weights w_k(n) = sqrt(C(n,k) (1-L)^(n-k) L^k).
std::vector<Eigen::VectorXd> loss_weights(double loss, int dim) {
  std::vector<Eigen::VectorXd> w(dim, Eigen::VectorXd::Zero(dim));
  for (int n = 0; n < dim; ++n) {
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      w[k](n) = std::sqrt(binom * std::pow(1.0 - loss, n - k) * std::pow(loss, k));
      binom *= static_cast<double>(n - k) / (k + 1.0);
    }
  }
  return w;
}

// rho' = sum_k (K_k on `mode`) rho (K_k on `mode`)^dag.
Eigen::MatrixXcd apply_loss(const Eigen::MatrixXcd& rho, double loss, int mode, int dim) {
  if (loss == 0.0) {
    return rho;
  }
  const auto w = loss_weights(loss, dim);
  // Index strides: the damped mode advances by `sel`, the spectator by `oth`.
  const int sel = mode == 0 ? dim : 1;
  const int oth = mode == 0 ? 1 : dim;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (int k = 0; k < dim; ++k) {
    for (int n1 = k; n1 < dim; ++n1) {
      for (int n2 = k; n2 < dim; ++n2) {
        const Complex c = w[k](n1) * w[k](n2);
        for (int o1 = 0; o1 < dim; ++o1) {
          const int row_src = n1 * sel + o1 * oth;
          const int row_dst = (n1 - k) * sel + o1 * oth;
          for (int o2 = 0; o2 < dim; ++o2) {
            out(row_dst, (n2 - k) * sel + o2 * oth) += c * rho(row_src, n2 * sel + o2 * oth);
          }
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXcd reduced_density(const FockStateRep& state, int mode) {
  const int d = state.dim();
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(d, d);
  for (int n1 = 0; n1 < d; ++n1) {
    for (int n2 = 0; n2 < d; ++n2) {
      Complex acc = 0.0;
      for (int m = 0; m < d; ++m) {
        const int i = mode == 0 ? n1 * d + m : m * d + n1;
        const int j = mode == 0 ? n2 * d + m : m * d + n2;
        acc += state.rho(i, j);
      }
      red(n1, n2) = acc;
    }
  }
  return red;
}

}  // namespace

std::vector<Eigen::MatrixXd> loss_kraus_ops(double loss, int cutoff) {
  const int dim = cutoff + 1;
  const auto w = loss_weights(loss, dim);
  std::vector<Eigen::MatrixXd> ops;
  for (int k = 0; k < dim; ++k) {
    Eigen::MatrixXd kk = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = k; n < dim; ++n) {
      kk(n - k, n) = w[k](n);
    }
    ops.push_back(std::move(kk));
  }
  return ops;
}

FockStateRep oracle_propagate(const InputSpec& spec, const InterferometerConfig& config,
                              double phi, int cutoff, double tail_bound) {
  if (cutoff < 8) {
    throw invalid_parameter_error("oracle_propagate: cutoff must be >= 8");
  }
  config.validate();
  const int dim = cutoff + 1;

  Eigen::VectorXcd psi = input_vector(spec, dim);
  const double deficit = std::max(0.0, 1.0 - psi.squaredNorm());

  TwoModeSqueezeUnitary(config.g1, config.theta1, dim).apply(psi);
  for (int na = 0; na < dim; ++na) {
    psi.segment(na * dim, dim) *= std::polar(1.0, phi * na);
  }

  FockStateRep state;
  state.cutoff = cutoff;
  state.tail_bound = tail_bound;
  state.rho = psi * psi.adjoint();
  state.rho = apply_loss(state.rho, config.l1, 0, dim);
  state.rho = apply_loss(state.rho, config.l2, 1, dim);
  TwoModeSqueezeUnitary(config.g2, config.theta2, dim).apply(state.rho);

  double edge = 0.0;
  for (int n = 0; n < dim; ++n) {
    edge += state.rho(cutoff * dim + n, cutoff * dim + n).real();
    if (n != cutoff) {
      edge += state.rho(n * dim + cutoff, n * dim + cutoff).real();
    }
  }
  state.tail_mass = deficit + std::max(0.0, edge);
  state.truncation_warning = state.tail_mass > tail_bound;
  if (state.tail_mass > 1e-4) {
    throw truncation_error("oracle_propagate: truncated basis holds tail mass " +
                               std::to_string(state.tail_mass) +
                               "; raise the cutoff or shrink the parameters",
                           state.tail_mass);
  }
  return state;
}

double oracle_parity(const FockStateRep& state, int mode) {
  const Eigen::MatrixXcd red = reduced_density(state, mode);
  double parity = 0.0;
  for (int n = 0; n < state.dim(); ++n) {
    parity += (n % 2 == 0 ? 1.0 : -1.0) * red(n, n).real();
  }
  return parity;
}

MomentStats oracle_photon_stats(const FockStateRep& state, const std::vector<int>& modes) {
  if (modes.empty()) {
    throw invalid_parameter_error("oracle_photon_stats: mode set must be nonempty");
  }
  const int d = state.dim();
  const bool use_a = std::find(modes.begin(), modes.end(), 0) != modes.end();
  const bool use_b = std::find(modes.begin(), modes.end(), 1) != modes.end();
  double m1 = 0.0;
  double m2 = 0.0;
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; nb < d; ++nb) {
      const double p = state.rho(na * d + nb, na * d + nb).real();
      const double n = (use_a ? na : 0) + (use_b ? nb : 0);
      m1 += p * n;
      m2 += p * n * n;
    }
  }
  return {m1, m2 - m1 * m1};
}

MomentStats oracle_homodyne_stats(const FockStateRep& state, int mode, double theta) {
  const int d = state.dim();
  const Eigen::MatrixXcd red = reduced_density(state, mode);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 0; n + 1 < d; ++n) {
    const Complex elem = std::polar(std::sqrt((n + 1.0) / 2.0), -theta);
    x(n, n + 1) = elem;  // <n| X(theta) |n+1> from the annihilation part
    x(n + 1, n) = std::conj(elem);
  }
  const double mean = (red * x).trace().real();
  const double second = (red * x * x).trace().real();
  return {mean, second - mean * mean};
}

double CrossCheckRow::max_deviation() const {
  return std::max({dev_parity, dev_n_mean, dev_n_var, dev_x_mean, dev_x_var});
}

CrossCheckReport cross_check(const std::vector<CrossCheckPoint>& grid, double tol,
                             ExecMode mode) {
  CrossCheckReport report;
  report.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), mode, [&](int i) {
    const CrossCheckPoint& pt = grid[i];
    CrossCheckRow row;
    row.point = pt;

    const FockStateRep oracle = oracle_propagate(pt.spec, pt.config, pt.phi, pt.cutoff);
    const GaussianState pipeline = propagate(pt.spec, pt.config, pt.phi, true);

    row.dev_parity =
        std::abs(oracle_parity(oracle, 1) - parity_expectation(pipeline, 1));
    const MomentStats n_o = oracle_photon_stats(oracle, {0, 1});
    const MomentStats n_p = intensity_stats(pipeline, {0, 1});
    row.dev_n_mean = std::abs(n_o.mean - n_p.mean);
    row.dev_n_var = std::abs(n_o.variance - n_p.variance);
    for (const double theta : {0.0, M_PI / 2.0}) {
      const MomentStats x_o = oracle_homodyne_stats(oracle, 1, theta);
      const MomentStats x_p = homodyne_stats(pipeline, 1, theta);
      row.dev_x_mean = std::max(row.dev_x_mean, std::abs(x_o.mean - x_p.mean));
      row.dev_x_var = std::max(row.dev_x_var, std::abs(x_o.variance - x_p.variance));
    }
    row.tail_mass = oracle.tail_mass;
    row.truncation_warning = oracle.truncation_warning;
    row.pass = row.max_deviation() < tol;
    report.rows[i] = row;
  });
  for (const CrossCheckRow& row : report.rows) {
    report.max_deviation = std::max(report.max_deviation, row.max_deviation());
    if (!row.truncation_warning) {
      report.max_reliable_deviation =
          std::max(report.max_reliable_deviation, row.max_deviation());
    }
    if (!row.pass) {
      (row.truncation_warning ? report.inconclusive : report.failures) += 1;
    }
    if (row.truncation_warning) {
      ++report.warnings;
    }
  }
  return report;
}

std::vector<CrossCheckPoint> default_cross_check_grid(int cutoff) {
  std::vector<CrossCheckPoint> grid;
  for (const double g : {0.25, 0.5}) {
    for (const double l : {0.0, 0.2}) {
      for (const double phi : {0.0, 0.2, 0.5, 1.0}) {
        for (const double alpha : {0.0, 1.0}) {
          for (const double r : {0.0, 0.5}) {
            CrossCheckPoint pt;
            pt.spec = InputSpec::coherent_squeezed(alpha, 0.0, r);
            pt.config = InterferometerConfig::balanced(g, l, l);
            pt.phi = phi;
            pt.cutoff = cutoff;
            grid.push_back(pt);
          }
        }
        CrossCheckPoint two;
        two.spec = InputSpec::two_coherent(1.0);
        two.config = InterferometerConfig::balanced(g, l, l);
        two.phi = phi;
        two.cutoff = cutoff;
        grid.push_back(two);
        CrossCheckPoint rotated;
        rotated.spec = InputSpec::coherent(1.0, M_PI / 4.0);
        rotated.config = InterferometerConfig::balanced(g, l, l);
        rotated.phi = phi;
        rotated.cutoff = cutoff;
        grid.push_back(rotated);
      }
    }
  }
  return grid;
}

}  // namespace fock
}  // namespace su11
