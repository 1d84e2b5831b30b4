#include "fefwork/isotropic.hpp"

#include <algorithm>
#include <cmath>

namespace fefwork {

namespace {
// Slack on the positivity window so that twirl() outputs computed in floating
// point still validate.
constexpr double kRangeSlack = 1e-12;
}  // namespace

IsotropicParams::IsotropicParams(int dim, double mixing) : d(dim), p(mixing) {
  if (dim < 2) throw ValidationError("IsotropicParams: d must be >= 2");
  if (!std::isfinite(mixing) || mixing < minP() - kRangeSlack || mixing > 1.0 + kRangeSlack)
    throw ValidationError("IsotropicParams: p outside the positivity interval [-1/(d^2-1), 1]");
  p = std::clamp(mixing, minP(), 1.0);
}

double IsotropicParams::singletOverlap() const {
  const double d2 = static_cast<double>(d) * d;
  return p + (1.0 - p) / d2;
}

double IsotropicParams::opNorm() const {
  const double d2 = static_cast<double>(d) * d;
  return std::max(p + (1.0 - p) / d2, (1.0 - p) / d2);
}

BipartiteState materialize(const IsotropicParams& params) {
  const int d = params.d;
  const CVector psi = singletVector(d);
  CMatrix rho = params.p * (psi * psi.adjoint()) +
                ((1.0 - params.p) / (d * d)) * CMatrix::Identity(d * d, d * d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return BipartiteState(d, std::move(rho));
}

RVector isotropicSpectrum(const IsotropicParams& params) {
  const int d2 = params.d * params.d;
  RVector ev = RVector::Constant(d2, (1.0 - params.p) / d2);
  ev(d2 - 1) = params.p + (1.0 - params.p) / d2;
  std::sort(ev.data(), ev.data() + d2);
  return ev;
}

}  // namespace fefwork
