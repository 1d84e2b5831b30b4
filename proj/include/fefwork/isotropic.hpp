#pragma once

#include "fefwork/qstate.hpp"

namespace fefwork {

/// rho_iso(p) = p |Psi_d^+><Psi_d^+| + (1 - p) I / d^2, p in [-1/(d^2-1), 1].
struct IsotropicParams {
  int d = 2;
  double p = 0.0;

  IsotropicParams(int dim, double mixing);

  double minP() const { return -1.0 / (static_cast<double>(d) * d - 1.0); }
  /// <Psi_d^+| rho_iso |Psi_d^+>
  double singletOverlap() const;
  /// Largest eigenvalue of rho_iso.
  double opNorm() const;
};

BipartiteState materialize(const IsotropicParams& params);

/// Exact spectrum (ascending) of rho_iso.
RVector isotropicSpectrum(const IsotropicParams& params);

}  // namespace fefwork
