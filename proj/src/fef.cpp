#include "fefwork/fef.hpp"

#include <cmath>

namespace fefwork {

double maxEntangledOverlap(const BipartiteState& state, const CMatrix& u) {
  const CVector v = maxEntangledVector(u);
  return (v.adjoint() * state.matrix() * v)(0, 0).real();
}

CMatrix polarUnitary(const CMatrix& w) {
  Eigen::JacobiSVD<CMatrix> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

SeeSawTrace seeSawFrom(const BipartiteState& state, const CMatrix& u0, int maxIter, double tol) {
  const int d = state.localDim();
  if (u0.rows() != d || u0.cols() != d) throw ValidationError("seeSawFrom: start must be d x d");

  SeeSawTrace trace;
  trace.u = u0;
  trace.objective.push_back(maxEntangledOverlap(state, u0));
  CMatrix w(d, d);
  for (int it = 0; it < maxIter; ++it) {
    const CVector rv = state.matrix() * maxEntangledVector(trace.u);
    for (int i = 0; i < d; ++i)
      for (int m = 0; m < d; ++m) w(m, i) = rv(compositeIndex(i, m, d));
    CMatrix next = polarUnitary(w);
    const double f = maxEntangledOverlap(state, next);
    const double delta = f - trace.objective.back();
    trace.objective.push_back(f);
    if (f >= trace.objective[trace.objective.size() - 2]) trace.u = std::move(next);
    if (delta < tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

FefResult fefSeeSaw(const BipartiteState& state, const SeeSawOptions& options) {
  if (options.restarts < 1) throw ValidationError("fefSeeSaw: restarts must be >= 1");
  const int d = state.localDim();

  FefResult best;
  best.value = -1.0;
  for (int k = 0; k <= options.restarts; ++k) {
    CMatrix start;
    if (k == 0) {
      start = CMatrix::Identity(d, d);
    } else {
      Rng rng(deriveSeed(options.seed, static_cast<std::uint64_t>(k)));
      start = haarUnitary(d, rng);
    }
    SeeSawTrace t = seeSawFrom(state, start, options.maxIter, options.tol);
    const double value = maxEntangledOverlap(state, t.u);
    if (value > best.value) {
      best.value = value;
      best.optimalU = std::move(t.u);
      best.converged = t.converged;
    }
  }
  best.restartsUsed = options.restarts + 1;
  return best;
}

double fefMonteCarlo(const BipartiteState& state, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("fefMonteCarlo: samples must be >= 1");
  Rng rng(seed);
  double best = -1.0;
  for (int s = 0; s < samples; ++s) {
    const double f = maxEntangledOverlap(state, haarUnitary(state.localDim(), rng));
    if (f > best) best = f;
  }
  return best;
}

IsotropicParams twirl(const BipartiteState& state) {
  const int d = state.localDim();
  const double d2 = static_cast<double>(d) * d;
  const double overlap = maxEntangledOverlap(state, CMatrix::Identity(d, d));
  return IsotropicParams(d, (d2 * overlap - 1.0) / (d2 - 1.0));
}

Energy twirlWorkCost(const PureState& phi, const TemperatureScale& t) {
  // T(phi) is isotropic, so its operator norm equals its FEF
  return Energy::fromKbt(std::log(twirl(phi.density()).opNorm()), t);
}

}  // namespace fefwork
