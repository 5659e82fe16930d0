#pragma once

#include <functional>
#include <string>
#include <vector>

#include "su11/fock_oracle.hpp"
#include "su11/sweep.hpp"

namespace su11 {

struct VerifyOptions {
  enum class Level { quick, full };
  Level level = Level::full;
  ExecMode exec = ExecMode::openmp;
  int fock_cutoff = 40;
};

// The closed-form signals under test, injectable so the test suite can
// corrupt one term and confirm the failure is attributed to the right
// formula.
struct VerifySignals {
  std::function<double(double alpha, double theta_alpha, double r, double g, double phi)>
      ideal_parity_signal;
  std::function<double(double alpha, double r, double g, double phi, double l)>
      lossy_parity_signal;

  static VerifySignals defaults();
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int n_points = 0;
  std::string note;
};

struct VerifyReport {
  VerifyOptions::Level level = VerifyOptions::Level::full;
  std::vector<VerifyCheck> checks;
  std::vector<std::string> notes;

  bool pass() const;
  std::string to_text() const;
};

// Structural invariants, closed-form-vs-pipeline grids, reduction
// identities, and the Fock-oracle cross check. quick subsamples the grids
// to roughly a tenth of the full size.
VerifyReport run_verify(const VerifyOptions& options = {},
                        const VerifySignals& signals = VerifySignals::defaults());

}  // namespace su11
