#include "fefwork/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace fefwork {

double shannonBits(const RVector& probs) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    const double p = probs(k);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double vonNeumann(const CMatrix& m) {
  requireDensityMatrix(m, "vonNeumann");
  return shannonBits(clampedSpectrum(m));
}

EntropyReport entropyReport(const BipartiteState& state) {
  EntropyReport r;
  const RVector spectrum = clampedSpectrum(state.matrix());
  r.S = shannonBits(spectrum);
  r.S_A = vonNeumann(partialTrace(state, Subsystem::A));
  r.S_B = vonNeumann(partialTrace(state, Subsystem::B));
  r.S_AgivenB = r.S - r.S_B;
  r.S_BgivenA = r.S - r.S_A;
  r.S_min = std::min(r.S_A, r.S_B);
  r.opNormRho = spectrum.maxCoeff();
  r.hMinLower = -std::log2(r.opNormRho);
  return r;
}

double smoothMinEntropyLower(const BipartiteState& state) {
  return -std::log2(clampedSpectrum(state.matrix()).maxCoeff());
}

}  // namespace fefwork
