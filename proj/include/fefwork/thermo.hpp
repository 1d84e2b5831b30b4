#pragma once

// Work-cost and work-extraction bounds. Every operation takes the FEF lower
// bound F^ produced by the see-saw; since F^ <= F, a violated inequality is a
// bug rather than optimiser noise. Operations that require F > 1/d return
// std::nullopt on the boundary and below.

#include <optional>

#include "fefwork/entropy.hpp"
#include "fefwork/isotropic.hpp"
#include "fefwork/units.hpp"

namespace fefwork {

/// True iff fef > 1/d (strict).
bool exceedsEntanglementThreshold(double fef, int d);

/// -log2(F^ d), the conditional-entropy ceiling of the erasure lemma.
std::optional<double> conditionalEntropyCeiling(double fefLower, int d);

/// Work gain of local erasure is at least k_B T ln(F^ d).
std::optional<Energy> erasureGainBound(double fefLower, int d, const TemperatureScale& t);

/// Erasure work cost upper bound S(A|B) k_B T ln 2. Negative cost = gain.
Energy erasureCostUpper(const EntropyReport& entropy, const TemperatureScale& t);

/// FEF ceiling (1/d) exp(W / k_B T) implied by an erasure work gain W.
double fefUpperFromErasure(const Energy& wErasure, int d);

/// Extractable work to I/d^2 is at least k_B T ln d^2 - S(rho) k_B T ln 2.
Energy extractionLower(const EntropyReport& entropy, int d, const TemperatureScale& t);

/// Lambda = log2 ||rho||_inf - [log2(F^ d) - S_min], bits.
double lambdaGap(double opNormRho, double fefLower, double sMin, int d);

struct WorkEstimateInputs {
  int d = 2;
  double fefLower = 0.0;
  double opNormRho = 0.0;
  double sMin = 0.0;
};

struct WorkEstimate {
  bool applicable = false;
  double deltaEps = 0.0;        // -3 ln(epsilon)
  double lambdaResidual = 0.0;  // Lambda in bits
  Energy errorBar;              // delta_eps k_B T ln 2
  std::optional<Energy> wTotalApprox;
  std::optional<Energy> wErApprox;
};

/// Approximate optimal extraction and erasure work. Applicable iff F^ > 1/d
/// and |Lambda| < delta_eps.
WorkEstimate optimalWorkEstimate(const WorkEstimateInputs& in, double epsilon, const TemperatureScale& t);

struct IsotropicThresholds {
  int d = 2;
  double harmonic = 0.0;         // H_d
  double pTildePhi = 0.0;        // (3d-1)/(d^2-1) (1 - 1/d)^d
  double fefEntanglement = 0.0;  // 1/d
  double fefLhsProjective = 0.0; // (H_d + H_d d - d)/d^2
  double fefLhsPovm = 0.0;       // pTilde (1 - 1/d^2) + 1/d^2
  Energy wLhsProjective;         // k_B T ln((H_d + H_d d - d)/d)
  Energy wLhsPovm;               // k_B T ln(pTilde (d - 1/d) + 1/d)
  /// The local-hidden-variable FEF threshold has no closed form; callers may
  /// supply one. Absent by default.
  std::optional<double> fefLhv;
  std::optional<Energy> wLhv() const;
};

IsotropicThresholds isotropicThresholds(int d, const TemperatureScale& t);

double harmonicNumber(int d);

/// FEF of rho_iso(p): equals ||rho_iso||_inf, i.e. p + (1-p)/d^2 for p >= 0
/// and (1-p)/d^2 for p < 0 (an MES orthogonal to the singlet exists).
double isotropicFef(const IsotropicParams& params);

}  // namespace fefwork
