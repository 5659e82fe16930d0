#include "su11/closed_forms.hpp"

#include <cmath>

namespace su11 {
namespace closed_forms {

using std::cos;
using std::cosh;
using std::exp;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tanh;

namespace detail {

double x1(double r, double g, double phi) {
  const double s2g = sinh(2.0 * g);
  const double s4g = sinh(4.0 * g);
  return exp(-2.0 * r) * std::pow(exp(2.0 * r) + 1.0, 2) *
             (8.0 * std::pow(s2g, 4) * cos(2.0 * phi) - 8.0 * s4g * s4g * cos(phi) +
              4.0 * cosh(4.0 * g) + 3.0 * cosh(8.0 * g) - 7.0) +
         64.0;
}

double x1_raw(double r, double g, double phi) {
  const double s2g = sinh(2.0 * g);
  return exp(-2.0 * r) * std::pow(exp(2.0 * r) + 1.0, 2) *
             (8.0 * std::pow(s2g, 4) * (cos(2.0 * phi) - cos(phi)) + 4.0 * cosh(4.0 * g) +
              3.0 * cosh(8.0 * g) - 7.0) +
         64.0;
}

double x2(double alpha, double theta_alpha, double r, double g, double phi) {
  const double t = theta_alpha;
  const double s2g = sinh(2.0 * g);
  const double sh2 = std::pow(sin(0.5 * phi), 2);
  const double sh4 = sh2 * sh2;
  const double bracket =
      8.0 * cosh(4.0 * g) * cos(2.0 * t) * sh4 -
      8.0 * cosh(2.0 * g) * sin(2.0 * t) * sin(phi) * (cos(phi) - 1.0) +
      8.0 * exp(4.0 * r) *
          std::pow(cos(t) * sin(phi) - 2.0 * cosh(2.0 * g) * sin(t) * sh2, 2) +
      32.0 * exp(2.0 * r) * s2g * s2g * sh4 + 8.0 * cosh(4.0 * g) * sh4 -
      8.0 * cos(t) * cos(t) * cos(phi) + (3.0 * cos(2.0 * t) - 1.0) * cos(2.0 * phi) +
      cos(2.0 * t) + 5.0;
  return 4.0 * alpha * alpha * s2g * s2g * bracket;
}

double x3(double r, double g, double phi) {
  const double sh2 = std::pow(sin(0.5 * phi), 2);
  return std::pow(exp(2.0 * r) + 1.0, 2) *
             (8.0 * cosh(8.0 * g) * sh2 * sh2 + 8.0 * cosh(4.0 * g) * sin(phi) * sin(phi) +
              4.0 * cos(phi) + 3.0 * cos(2.0 * phi) - 7.0) +
         64.0 * exp(2.0 * r);
}

double y1(double r, double g, double phi, double l) {
  const double e2 = exp(2.0 * r);
  const double e4 = exp(4.0 * r);
  const double lm = l - 1.0;
  const double lm2 = lm * lm;
  const double c2g = cosh(2.0 * g);
  const double c4g = cosh(4.0 * g);
  const double c6g = cosh(6.0 * g);
  const double c8g = cosh(8.0 * g);
  const double cp = cos(phi);
  const double c2p = cos(2.0 * phi);
  return exp(-2.0 * r) *
         (-4.0 * c4g *
              (-2.0 * (5.0 * l * l - 2.0 * l + 1.0) * e2 +
               lm2 * std::pow(e2 + 1.0, 2) * c2p + lm2 * (-e4) - lm2) +
          16.0 * lm2 * e2 * c6g * cp + 8.0 * lm2 * e4 * c6g * cp -
          8.0 * lm2 * e2 * c8g * cp - 4.0 * lm2 * e4 * c8g * cp +
          2.0 * lm2 * e2 * c8g * c2p + lm2 * e4 * c8g * c2p + 16.0 * lm * e2 * c6g * cp +
          8.0 * lm * e4 * c6g * cp +
          8.0 * (1.0 - l) * l * c2g *
              (std::pow(e2 + 1.0, 2) * cp - 2.0 * e2 + 7.0 * e4 + 7.0) -
          16.0 * lm2 * e2 * c6g - 8.0 * lm2 * e4 * c6g + 6.0 * lm2 * e2 * c8g +
          3.0 * lm2 * e4 * c8g - 16.0 * lm * e2 * c6g - 8.0 * lm * e4 * c6g +
          8.0 * lm2 * c6g * cp - 4.0 * lm2 * c8g * cp + lm2 * c8g * c2p +
          8.0 * lm * c6g * cp - 8.0 * lm2 * c6g + 3.0 * lm2 * c8g - 8.0 * lm * c6g +
          8.0 * lm2 * e2 * cp + 4.0 * lm2 * e4 * cp + 6.0 * lm2 * e2 * c2p +
          3.0 * lm2 * e4 * c2p + 82.0 * lm2 * e2 - 7.0 * lm2 * e4 + 64.0 * lm * e2 +
          4.0 * lm2 * cp + 3.0 * lm2 * c2p - 7.0 * lm2 + 32.0 * e2);
}

double y2(double alpha, double r, double g, double phi, double l) {
  const double e2 = exp(2.0 * r);
  const double e4 = exp(4.0 * r);
  const double s2g = sinh(2.0 * g);
  const double c4g = cosh(4.0 * g);
  const double cp = cos(phi);
  return 16.0 * alpha * alpha * (1.0 - l) * s2g * s2g * std::pow(sin(0.5 * phi), 2) *
         (2.0 * (l - 1.0) *
              (e2 * (c4g - 1.0) * (cp - 1.0) + (c4g + 1.0) * (cp - 1.0) -
               2.0 * e4 * (cp + 1.0)) +
          8.0 * l * e2 * cosh(2.0 * g));
}

double y3(double r, double g, double phi, double l) {
  const double e2 = exp(2.0 * r);
  const double e4 = exp(4.0 * r);
  const double lm = l - 1.0;
  const double lm2 = lm * lm;
  const double s2g4 = std::pow(sinh(2.0 * g), 4);
  const double c2p = cos(2.0 * phi);
  const double cp = cos(phi);
  return -8.0 * lm2 * std::pow(e2 + 1.0, 2) * std::pow(sinh(4.0 * g), 2) * cp +
         2.0 * e2 *
             (8.0 * (l - 2.0) * l * s2g4 * c2p +
              4.0 * (l * (5.0 * l - 2.0) + 1.0) * cosh(4.0 * g) -
              8.0 * lm * l * cosh(6.0 * g) + 3.0 * lm2 * cosh(8.0 * g) + 8.0 * s2g4 * c2p +
              l * (41.0 * l - 50.0) + 25.0) +
         lm * e4 *
             (lm * (8.0 * s2g4 * c2p + 3.0 * cosh(8.0 * g) - 7.0) +
              4.0 * lm * cosh(4.0 * g) - 8.0 * l * cosh(6.0 * g)) +
         8.0 * lm * l * cosh(2.0 * g) *
             (4.0 * std::pow(e2 + 1.0, 2) * std::pow(sinh(2.0 * g), 2) * cp + 2.0 * e2 -
              7.0 * e4 - 7.0) +
         lm * (lm * (8.0 * s2g4 * c2p + 3.0 * cosh(8.0 * g) - 7.0) +
               4.0 * lm * cosh(4.0 * g) - 8.0 * l * cosh(6.0 * g));
}

double z1(double alpha, double g, double l, double phi) {
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double inner = -2.0 * s2g2 * cos(phi) + cosh(4.0 * g) + 1.0;
  const double expo = 8.0 * alpha * alpha * (l - 1.0) * s2g2 *
                      std::pow(sin(0.5 * phi), 2) /
                      (2.0 * l * cosh(2.0 * g) - (l - 1.0) * inner);
  const double denom = (l - 1.0) * inner - 2.0 * l * cosh(2.0 * g);
  return 1.0 - 4.0 * exp(expo) / (denom * denom);
}

double k1(double alpha, double g, double l, double phi) {
  const double a2 = alpha * alpha;
  const double s2g = sinh(2.0 * g);
  const double inner = -4.0 * (a2 + 1.0) * l * cosh(2.0 * g) +
                       2.0 * (1.0 - l) * cosh(4.0 * g) * cos(phi) -
                       (2.0 - 2.0 * l) * cosh(4.0 * g) - 4.0 * a2 * (1.0 - l) -
                       2.0 * (1.0 - l) * cos(phi) - 3.0 * (1.0 - l) - l + 1.0;
  return std::pow(1.0 - l, 2) * std::pow(s2g, 4) * std::pow(sin(phi), 2) * inner * inner;
}

double k2(double alpha, double g, double l, double phi) {
  (void)alpha;
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double base = 4.0 * (1.0 - l) * s2g2 * cos(phi) - 4.0 * l * cosh(2.0 * g) -
                      (2.0 - 2.0 * l) * cosh(4.0 * g) - 3.0 * (1.0 - l) - l + 1.0;
  return std::pow(base, 6);
}

double k3(double alpha, double g, double l, double phi) {
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double num =
      4.0 * alpha * alpha * s2g2 * (-2.0 * (1.0 - l) * cos(phi) - 2.0 * l + 2.0);
  const double den = 4.0 * (1.0 - l) * s2g2 * cos(phi) - 4.0 * l * cosh(2.0 * g) -
                     (2.0 - 2.0 * l) * cosh(4.0 * g) - 3.0 * (1.0 - l) - l + 1.0;
  return num / den;
}

double z2(double alpha, double g, double l, double phi) {
  return 256.0 * k1(alpha, g, l, phi) / k2(alpha, g, l, phi) * exp(k3(alpha, g, l, phi));
}

double c1(double alpha, double g, double l1, double l2, double phi) {
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double root = sqrt(1.0 - l1) * sqrt(1.0 - l2);
  const double num = -2.0 * alpha * alpha * s2g2 * (2.0 * root * cos(phi) + l1 + l2 - 2.0);
  const double den = 2.0 * root * s2g2 * cos(phi) + 4.0 * l1 * std::pow(sinh(g), 4) +
                     l2 * s2g2 - cosh(4.0 * g) - 1.0;
  return num / den;
}

double c2(double alpha, double g, double l1, double l2, double phi) {
  (void)alpha;
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double root = sqrt(1.0 - l1) * sqrt(1.0 - l2);
  const double base = -2.0 * root * s2g2 * cos(phi) - 4.0 * l1 * std::pow(sinh(g), 4) -
                      l2 * s2g2 + cosh(4.0 * g) + 1.0;
  return base * base;
}

double f1(double alpha, double g, double l1, double l2, double phi) {
  return 1.0 - 4.0 / c2(alpha, g, l1, l2, phi) * exp(c1(alpha, g, l1, l2, phi));
}

double d1(double alpha, double g, double l1, double l2, double phi) {
  const double a2 = alpha * alpha;
  const double s2g = sinh(2.0 * g);
  const double root = sqrt(1.0 - l1) * sqrt(1.0 - l2);
  const double inner = -4.0 * (a2 + 1.0) * l1 * cosh(2.0 * g) +
                       2.0 * root * cosh(4.0 * g) * cos(phi) -
                       (-l1 - l2 + 2.0) * cosh(4.0 * g) - 4.0 * a2 * (1.0 - l1) -
                       2.0 * root * cos(phi) - 3.0 * (1.0 - l1) - l2 + 1.0;
  return (1.0 - l1) * (1.0 - l2) * std::pow(s2g, 4) * std::pow(sin(phi), 2) * inner *
         inner;
}

double d2(double alpha, double g, double l1, double l2, double phi) {
  (void)alpha;
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double root = sqrt(1.0 - l1) * sqrt(1.0 - l2);
  const double base = 4.0 * root * s2g2 * cos(phi) - 4.0 * l1 * cosh(2.0 * g) -
                      (-l1 - l2 + 2.0) * cosh(4.0 * g) - 3.0 * (1.0 - l1) - l2 + 1.0;
  return std::pow(base, 6);
}

double d3(double alpha, double g, double l1, double l2, double phi) {
  const double s2g2 = std::pow(sinh(2.0 * g), 2);
  const double root = sqrt(1.0 - l1) * sqrt(1.0 - l2);
  const double num =
      4.0 * alpha * alpha * s2g2 * (-2.0 * root * cos(phi) - l1 - l2 + 2.0);
  const double den = 4.0 * root * s2g2 * cos(phi) - 4.0 * l1 * cosh(2.0 * g) -
                     (2.0 - l1 - l2) * cosh(4.0 * g) - 3.0 * (1.0 - l1) - l2 + 1.0;
  return num / den;
}

double f2(double alpha, double g, double l1, double l2, double phi) {
  return 256.0 * d1(alpha, g, l1, l2, phi) / d2(alpha, g, l1, l2, phi) *
         exp(d3(alpha, g, l1, l2, phi));
}

}  // namespace detail

namespace {

void check_loss(double l, const char* who) {
  if (l < 0.0 || l >= 1.0) {
    throw invalid_parameter_error(std::string(who) + ": loss must lie in [0, 1)");
  }
}

void check_id_phi(double phi) {
  if (std::abs(sin(0.5 * phi)) < 1e-9 || std::abs(cos(0.5 * phi)) < 1e-9) {
    throw derivative_underflow_error(
        "id sensitivity: singular at phi = " + std::to_string(phi), 0.0);
  }
}

}  // namespace

double parity_signal_ideal_cf(double alpha, double theta_alpha, double r, double g,
                              double phi) {
  const double x3v = detail::x3(r, g, phi);
  if (std::abs(x3v) < 1e-250) {
    throw numeric_degeneracy_error("parity_signal_ideal_cf: x3 underflow");
  }
  return 8.0 / sqrt(detail::x1(r, g, phi)) *
         exp(-detail::x2(alpha, theta_alpha, r, g, phi) / x3v);
}

double parity_signal_ideal_cf_raw(double alpha, double theta_alpha, double r, double g,
                                  double phi) {
  const double x3v = detail::x3(r, g, phi);
  if (std::abs(x3v) < 1e-250) {
    throw numeric_degeneracy_error("parity_signal_ideal_cf_raw: x3 underflow");
  }
  return 1.0 / sqrt(detail::x1_raw(r, g, phi)) *
         exp(-detail::x2(alpha, theta_alpha, r, g, phi) / x3v);
}

double parity_signal_lossy_cf(double alpha, double r, double g, double phi, double l) {
  check_loss(l, "parity_signal_lossy_cf");
  const double y3v = detail::y3(r, g, phi, l);
  if (std::abs(y3v) < 1e-250) {
    throw numeric_degeneracy_error("parity_signal_lossy_cf: y3 underflow");
  }
  return 8.0 / sqrt(detail::y1(r, g, phi, l)) * exp(-detail::y2(alpha, r, g, phi, l) / y3v);
}

double parity_sensitivity_ideal_optimal(double alpha, double theta_alpha, double r,
                                        double g) {
  const double n_alpha = alpha * alpha;
  const double n_s = sinh(r) * sinh(r);
  const double g_opa = sinh(2.0 * g);
  const double bracket =
      n_alpha * (sinh(2.0 * r) * cos(2.0 * theta_alpha) + cosh(2.0 * r)) + n_s + 1.0;
  return 1.0 / (g_opa * sqrt(bracket));
}

double parity_sensitivity_vacuum_lossy(double g, double l, double phi) {
  check_loss(l, "parity_sensitivity_vacuum_lossy");
  const double s2g = sinh(2.0 * g);
  const double c2g = cosh(2.0 * g);
  const double bracket = (1.0 - l) * s2g * s2g * cos(phi) - (1.0 - l) * c2g * c2g -
                         l * c2g;
  const double noise = sqrt(1.0 - 1.0 / (bracket * bracket));
  const double slope = 4.0 * (cosh(2.0 * g) / s2g) * (l + (1.0 - l) * c2g) -
                       4.0 * (1.0 - l) * s2g * cos(phi);
  return std::abs(noise / sin(phi) / (16.0 * (1.0 - l)) * slope * slope);
}

double parity_sensitivity_coherent_lossy(double alpha, double g, double l, double phi) {
  check_loss(l, "parity_sensitivity_coherent_lossy");
  return sqrt(detail::z1(alpha, g, l, phi) / detail::z2(alpha, g, l, phi));
}

double parity_sensitivity_coherent_unequal_lossy(double alpha, double g, double l1,
                                                 double l2, double phi) {
  check_loss(l1, "parity_sensitivity_coherent_unequal_lossy");
  check_loss(l2, "parity_sensitivity_coherent_unequal_lossy");
  return sqrt(detail::f1(alpha, g, l1, l2, phi) / detail::f2(alpha, g, l1, l2, phi));
}

double hd_sensitivity_lossy(double alpha, double r, double g, double l) {
  check_loss(l, "hd_sensitivity_lossy");
  const double n_alpha = alpha * alpha;
  if (n_alpha <= 0.0) {
    throw unsupported_error(
        "hd_sensitivity_lossy: diverges for vacuum input (no coherent carrier)");
  }
  const double n_s = sinh(r) * sinh(r);
  const double n_opa = 2.0 * sinh(g) * sinh(g);
  const double n_tot = (n_opa + 1.0) * (n_alpha + n_s) + n_opa;
  const double g_opa = sinh(2.0 * g);
  return 1.0 / (exp(r) * g_opa * sqrt(n_alpha)) *
         sqrt(1.0 + l / (1.0 - l) * exp(2.0 * r) * n_tot / (n_alpha + n_s));
}

double hd_sensitivity_two_coherent(double alpha, double g, double l) {
  check_loss(l, "hd_sensitivity_two_coherent");
  if (alpha <= 0.0) {
    throw unsupported_error("hd_sensitivity_two_coherent: requires |alpha_0| > 0");
  }
  return sqrt((l * cosh(2.0 * g) + 1.0 - l) / (1.0 - l)) /
         (sqrt(2.0) * alpha * cosh(g) * cosh(g) * (tanh(g) + 1.0));
}

double id_sensitivity_coherent_lossy(double alpha, double g, double l, double phi) {
  check_loss(l, "id_sensitivity_coherent_lossy");
  check_id_phi(phi);
  const double a2 = alpha * alpha;
  const double csch2g = 1.0 / sinh(2.0 * g);
  const double csc2 = std::pow(1.0 / sin(0.5 * phi), 2);
  const double sec2 = std::pow(1.0 / cos(0.5 * phi), 2);
  const double csc_part = 2.0 * (a2 + 1.0) * l * (1.0 - l) * cosh(2.0 * g) +
                          2.0 * a2 * std::pow(1.0 - l, 2) + l * l * cosh(4.0 * g) -
                          (2.0 - l) * l;
  const double sec_part = (2.0 * a2 + 1.0) * std::pow(1.0 - l, 2) * cosh(8.0 * g) +
                          2.0 * (a2 + 1.0) * l * (1.0 - l) * cosh(6.0 * g) +
                          l * l * cosh(4.0 * g) - 1.0;
  const double body = std::pow(csch2g, 4) * (csc2 * csc_part + sec2 * sec_part) -
                      8.0 * (2.0 * a2 + 1.0) * std::pow(1.0 - l, 2);
  return sqrt(body) / (a2 + 1.0) / (1.0 - l) / sqrt(8.0);
}

double id_sensitivity_vacuum_lossy(double g, double l, double phi) {
  // alpha -> 0 limit of the one-coherent expression; the raw transcription
  // below carries the tail term with the opposite sign.
  return id_sensitivity_coherent_lossy(0.0, g, l, phi);
}

double id_sensitivity_vacuum_lossy_raw(double g, double l, double phi) {
  check_loss(l, "id_sensitivity_vacuum_lossy_raw");
  check_id_phi(phi);
  const double csch2g = 1.0 / sinh(2.0 * g);
  const double csc2 = std::pow(1.0 / sin(0.5 * phi), 2);
  const double sec2 = std::pow(1.0 / cos(0.5 * phi), 2);
  const double csc_part =
      l * l * cosh(4.0 * g) + 2.0 * (1.0 - l) * l * cosh(2.0 * g) - (2.0 - l) * l;
  const double sec_part = l * l * cosh(4.0 * g) + std::pow(1.0 - l, 2) * cosh(8.0 * g) +
                          2.0 * l * (1.0 - l) * cosh(6.0 * g) - 1.0;
  const double body = std::pow(csch2g, 4) * (csc2 * csc_part + sec2 * sec_part) +
                      8.0 * std::pow(1.0 - l, 2);
  return sqrt(body) / (1.0 - l) / sqrt(8.0);
}

double id_sensitivity_two_coherent(double alpha, double g, double l) {
  check_loss(l, "id_sensitivity_two_coherent");
  if (alpha <= 0.0) {
    throw unsupported_error("id_sensitivity_two_coherent: requires |alpha_0| > 0");
  }
  const double a2 = alpha * alpha;
  const double sh2 = sinh(g) * sinh(g);
  const double ch2 = cosh(g) * cosh(g);
  const double term1 = 1.0 / (4.0 * a2 * sh2 * ch2) *
                       (1.0 + l / (1.0 - l) * (1.0 + 2.0 * sh2));
  const double term2 = l / std::pow(1.0 - l, 2) * (1.0 + l * (sh2 + ch2)) /
                       (4.0 * a2 * ch2);
  return sqrt(term1 + term2);
}

LimitSet quantum_limits(const InputSpec& spec, const InterferometerConfig& config) {
  const PhotonBudget budget = photon_budget(spec, config);
  LimitSet limits;
  if (budget.n_tot <= 0.0) {
    throw invalid_parameter_error("quantum_limits: N_tot must be positive");
  }
  limits.snl = 1.0 / sqrt(budget.n_tot);
  limits.hl = 1.0 / budget.n_tot;

  const double kappa = budget.n_opa * (budget.n_opa + 2.0);
  const double n_alpha = spec.n_alpha();
  const double n_opa = budget.n_opa;
  if (spec.theta_s != 0.0) {
    limits.qcrb_note = "qcrb tabulated only for theta_s = 0";
    return limits;
  }
  switch (spec.kind) {
    case InputSpec::Kind::vacuum:
      limits.qcrb = 1.0 / sqrt(kappa);
      break;
    case InputSpec::Kind::coherent:
      limits.qcrb =
          1.0 / sqrt(kappa * (2.0 * n_alpha + 1.0) + 2.0 * n_alpha * (n_opa + 2.0));
      break;
    case InputSpec::Kind::two_coherent:
      limits.qcrb = 1.0 / sqrt(2.0 * n_alpha * ((n_opa + 1.0) * sqrt(kappa) + kappa + 1.0) +
                               kappa);
      break;
    case InputSpec::Kind::coherent_squeezed: {
      const double r = spec.r;
      limits.qcrb =
          1.0 / sqrt(2.0 * n_alpha * (n_opa + 2.0) +
                     n_opa * n_opa * std::pow(sinh(2.0 * r), 2) / 2.0 +
                     kappa * (2.0 * n_alpha * cosh(r) * exp(r) + cosh(r) * cosh(r)));
      break;
    }
  }
  return limits;
}

}  // namespace closed_forms
}  // namespace su11
