#pragma once

#include "fefwork/qstate.hpp"

namespace fefwork {

/// All entropies are in bits.
struct EntropyReport {
  double S = 0.0;
  double S_A = 0.0;
  double S_B = 0.0;
  double S_AgivenB = 0.0;  // S - S_B
  double S_BgivenA = 0.0;  // S - S_A
  double S_min = 0.0;      // min(S_A, S_B)
  double opNormRho = 0.0;
  double hMinLower = 0.0;  // -log2 ||rho||_inf, a lower bound on the smooth min-entropy
};

/// Shannon entropy (bits) of a probability vector; 0 log 0 := 0.
double shannonBits(const RVector& probs);

/// -tr(m log2 m) over the clamped spectrum. Throws ValidationError when m is
/// not a density matrix.
double vonNeumann(const CMatrix& m);

EntropyReport entropyReport(const BipartiteState& state);

/// -log2 ||rho||_inf. Only a lower bound on the epsilon-smoothed quantity;
/// the ball supremum is not optimised.
double smoothMinEntropyLower(const BipartiteState& state);

}  // namespace fefwork
