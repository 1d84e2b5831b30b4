#include "fefwork/thermo.hpp"

#include <cmath>

namespace fefwork {

namespace {
const double kLn2 = std::log(2.0);
}

bool exceedsEntanglementThreshold(double fef, int d) { return fef * d > 1.0; }

std::optional<double> conditionalEntropyCeiling(double fefLower, int d) {
  if (!exceedsEntanglementThreshold(fefLower, d)) return std::nullopt;
  return -std::log2(fefLower * d);
}

std::optional<Energy> erasureGainBound(double fefLower, int d, const TemperatureScale& t) {
  if (!exceedsEntanglementThreshold(fefLower, d)) return std::nullopt;
  return Energy::fromKbt(std::log(fefLower * d), t);
}

Energy erasureCostUpper(const EntropyReport& entropy, const TemperatureScale& t) {
  return Energy::fromKbt(entropy.S_AgivenB * kLn2, t);
}

double fefUpperFromErasure(const Energy& wErasure, int d) {
  return std::exp(wErasure.inKbt) / d;
}

Energy extractionLower(const EntropyReport& entropy, int d, const TemperatureScale& t) {
  return Energy::fromKbt(std::log(static_cast<double>(d) * d) - entropy.S * kLn2, t);
}

double lambdaGap(double opNormRho, double fefLower, double sMin, int d) {
  if (!(fefLower > 0.0)) throw ValidationError("lambdaGap: FEF estimate must be positive");
  return std::log2(opNormRho) - (std::log2(fefLower * d) - sMin);
}

WorkEstimate optimalWorkEstimate(const WorkEstimateInputs& in, double epsilon, const TemperatureScale& t) {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw ValidationError("optimalWorkEstimate: epsilon must lie in (0, 1/2]");
  WorkEstimate r;
  r.deltaEps = -3.0 * std::log(epsilon);
  r.errorBar = Energy::fromKbt(r.deltaEps * kLn2, t);
  r.lambdaResidual = lambdaGap(in.opNormRho, in.fefLower, in.sMin, in.d);
  r.applicable = exceedsEntanglementThreshold(in.fefLower, in.d) &&
                 std::abs(r.lambdaResidual) < r.deltaEps;
  if (r.applicable) {
    const double d2 = static_cast<double>(in.d) * in.d;
    const Energy wEr = Energy::fromKbt(std::log(in.fefLower * in.d), t);
    r.wErApprox = wEr;
    r.wTotalApprox = Energy::fromKbt(std::log(d2) - in.sMin * kLn2 + wEr.inKbt, t);
  }
  return r;
}

double harmonicNumber(int d) {
  double h = 0.0;
  for (int n = 1; n <= d; ++n) h += 1.0 / n;
  return h;
}

std::optional<Energy> IsotropicThresholds::wLhv() const {
  if (!fefLhv) return std::nullopt;
  return Energy::fromKbt(std::log(*fefLhv * d), TemperatureScale(wLhsPovm.kbt));
}

IsotropicThresholds isotropicThresholds(int d, const TemperatureScale& t) {
  if (d < 2) throw ValidationError("isotropicThresholds: d must be >= 2");
  const double dd = d;
  IsotropicThresholds th;
  th.d = d;
  th.harmonic = harmonicNumber(d);
  th.pTildePhi = (3.0 * dd - 1.0) / (dd * dd - 1.0) * std::pow(1.0 - 1.0 / dd, dd);
  th.fefEntanglement = 1.0 / dd;
  th.fefLhsProjective = (th.harmonic + th.harmonic * dd - dd) / (dd * dd);
  th.fefLhsPovm = th.pTildePhi * (1.0 - 1.0 / (dd * dd)) + 1.0 / (dd * dd);
  th.wLhsProjective = Energy::fromKbt(std::log((th.harmonic + th.harmonic * dd - dd) / dd), t);
  th.wLhsPovm = Energy::fromKbt(std::log(th.pTildePhi * (dd - 1.0 / dd) + 1.0 / dd), t);
  return th;
}

double isotropicFef(const IsotropicParams& params) { return params.opNorm(); }

}  // namespace fefwork
