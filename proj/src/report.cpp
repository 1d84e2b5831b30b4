#include "fefwork/report.hpp"

#include <algorithm>

namespace fefwork {

BoundsReport buildReport(const BipartiteState& state, const ReportOptions& options) {
  const TemperatureScale t(options.kbt);
  const int d = state.localDim();

  BoundsReport r;
  r.d = d;
  r.kbt = options.kbt;
  r.epsilon = options.epsilon;
  r.entropy = entropyReport(state);
  r.fef = fefSeeSaw(state, options.seeSaw);

  QOptions qo;
  qo.tol = options.tolSdp;
  qo.fefUnitary = r.fef.optimalU;
  r.q = qFunction(state, qo);

  const double fef = r.fef.value;
  r.conditionalEntropyCeiling = conditionalEntropyCeiling(fef, d);
  r.erasureGainLower = erasureGainBound(fef, d, t);
  r.erasureCostUpper = erasureCostUpper(r.entropy, t);
  if (r.erasureGainLower) r.fefUpper = fefUpperFromErasure(*r.erasureGainLower, d);
  r.extractLower = extractionLower(r.entropy, d, t);
  r.workEstimate = optimalWorkEstimate({d, fef, r.entropy.opNormRho, r.entropy.S_min}, options.epsilon, t);
  r.thresholds = isotropicThresholds(std::max(d, 2), t);

  r.hMinChainHolds = r.q.qDual + 1e-9 >= fef;
  if (r.conditionalEntropyCeiling) r.ceilingHoldsSingleCopy = r.entropy.S_AgivenB <= *r.conditionalEntropyCeiling + 1e-7;
  r.entropicGap = r.entropy.S_AgivenB - r.q.hMin;
  return r;
}

}  // namespace fefwork
