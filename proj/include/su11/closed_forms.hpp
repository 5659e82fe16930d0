#pragma once

#include <optional>
#include <string>

#include "su11/gaussian.hpp"
#include "su11/interferometer.hpp"

namespace su11 {
namespace closed_forms {

// Quantum limits for a given input class and OPA strength.
//   snl = 1/sqrt(N_tot), hl = 1/N_tot, qcrb per input class with
//   kappa = N_opa (N_opa + 2). qcrb is empty for input classes outside the
//   four tabulated ones.
struct LimitSet {
  double snl = 0.0;
  double hl = 0.0;
  std::optional<double> qcrb;
  std::string qcrb_note;
};

LimitSet quantum_limits(const InputSpec& spec, const InterferometerConfig& config);

// ---------------------------------------------------------------------------
// Parity signal, ideal interferometer (balanced g, theta1 = 0, theta2 = pi).
//
// <Pi_b> = 8 x1^{-1/2} exp(-x2/x3). Two terms of the reference transcription
// required correction to agree with the Gaussian pipeline and the Fock
// oracle (see parity_signal_ideal_cf_raw): the prefactor is 8, matching the
// lossy expression, and the cos(phi) coefficient in x1 is sinh^2(4g), not
// sinh^4(2g). The raw transcription is kept for the record.
// ---------------------------------------------------------------------------
double parity_signal_ideal_cf(double alpha, double theta_alpha, double r, double g,
                              double phi);
double parity_signal_ideal_cf_raw(double alpha, double theta_alpha, double r, double g,
                                  double phi);

// Parity signal with equal losses L on both arms (theta_alpha = 0):
// <Pi_b^loss> = 8 y1^{-1/2} exp(-y2/y3).
double parity_signal_lossy_cf(double alpha, double r, double g, double phi, double l);

// ---------------------------------------------------------------------------
// Parity sensitivities.
// ---------------------------------------------------------------------------

// Optimal (phi -> 0) ideal sensitivity for a coherent + squeezed-vacuum
// input: 1/(G sqrt(N_a [sinh 2r cos 2theta_a + cosh 2r] + N_s + 1)) with
// G = sinh 2g. At theta_alpha = 0 the bracket reduces to N_a e^{2r} + N_s.
double parity_sensitivity_ideal_optimal(double alpha, double theta_alpha, double r,
                                        double g);

// Vacuum input, equal losses, as a function of phi.
double parity_sensitivity_vacuum_lossy(double g, double l, double phi);

// One-coherent input, equal losses: sqrt(z1/z2).
double parity_sensitivity_coherent_lossy(double alpha, double g, double l, double phi);

// One-coherent input, unequal losses: sqrt(f1/f2). Reduces to the equal-loss
// form at l1 = l2.
double parity_sensitivity_coherent_unequal_lossy(double alpha, double g, double l1,
                                                 double l2, double phi);

// ---------------------------------------------------------------------------
// Homodyne sensitivities (optimal over phi). Diverge for vacuum input.
// ---------------------------------------------------------------------------
double hd_sensitivity_lossy(double alpha, double r, double g, double l);
double hd_sensitivity_two_coherent(double alpha, double g, double l);

// ---------------------------------------------------------------------------
// Intensity sensitivities.
// ---------------------------------------------------------------------------

// One-coherent input, equal losses, as a function of phi; singular at
// phi in {0, pi}.
double id_sensitivity_coherent_lossy(double alpha, double g, double l, double phi);

// Vacuum input. The raw transcription carries +8(1-L)^2 where the alpha -> 0
// limit of the one-coherent expression (and the pipeline) requires
// -8(1-L)^2; the corrected form is the default.
double id_sensitivity_vacuum_lossy(double g, double l, double phi);
double id_sensitivity_vacuum_lossy_raw(double g, double l, double phi);

// Two-equal-coherent input, optimal over phi.
double id_sensitivity_two_coherent(double alpha, double g, double l);

// Sub-terms, exposed for term-level unit tests.
namespace detail {
double x1(double r, double g, double phi);
double x1_raw(double r, double g, double phi);
double x2(double alpha, double theta_alpha, double r, double g, double phi);
double x3(double r, double g, double phi);
double y1(double r, double g, double phi, double l);
double y2(double alpha, double r, double g, double phi, double l);
double y3(double r, double g, double phi, double l);
double z1(double alpha, double g, double l, double phi);
double z2(double alpha, double g, double l, double phi);
double k1(double alpha, double g, double l, double phi);
double k2(double alpha, double g, double l, double phi);
double k3(double alpha, double g, double l, double phi);
double f1(double alpha, double g, double l1, double l2, double phi);
double f2(double alpha, double g, double l1, double l2, double phi);
double c1(double alpha, double g, double l1, double l2, double phi);
double c2(double alpha, double g, double l1, double l2, double phi);
double d1(double alpha, double g, double l1, double l2, double phi);
double d2(double alpha, double g, double l1, double l2, double phi);
double d3(double alpha, double g, double l1, double l2, double phi);
}  // namespace detail

}  // namespace closed_forms
}  // namespace su11
