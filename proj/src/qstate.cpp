#include "fefwork/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fefwork {

namespace {

std::string fmtValue(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

// --- validation -----------------------------------------------------------

void requireFinite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw ValidationError(std::string(what) + ": non-finite entry");
}

void requireSquare(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
}

double hermiticityError(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void requireHermitian(const CMatrix& m, const char* what, double tol) {
  requireSquare(m, what);
  requireFinite(m, what);
  const double err = hermiticityError(m);
  if (err > tol)
    throw ValidationError(std::string(what) + ": not Hermitian (max|m - m^dagger| = " +
                          fmtValue(err) + ")");
}

void requireDensityMatrix(const CMatrix& m, const char* what) {
  requireHermitian(m, what);
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw ValidationError(std::string(what) + ": trace " + fmtValue(tr) + " != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const double minEv = es.eigenvalues().minCoeff();
  if (minEv < -kPsdTol)
    throw ValidationError(std::string(what) + ": not PSD (min eigenvalue " + fmtValue(minEv) +
                          ")");
}

// --- states ---------------------------------------------------------------

BipartiteState::BipartiteState(int d, CMatrix rho) : d_(d), rho_(std::move(rho)) {
  if (d < 1) throw ValidationError("BipartiteState: local dimension must be >= 1");
  if (rho_.rows() != d * d || rho_.cols() != d * d)
    throw ValidationError("BipartiteState: matrix must be d^2 x d^2");
  requireDensityMatrix(rho_, "BipartiteState");
}

BipartiteState BipartiteState::fromPure(const PureState& phi) {
  const CVector& v = phi.amplitudes();
  CMatrix rho = v * v.adjoint();
  // exact Hermitian symmetrisation keeps validation noise-free
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return BipartiteState(phi.localDim(), std::move(rho));
}

PureState::PureState(int d, CVector amplitudes) : d_(d), amps_(std::move(amplitudes)) {
  if (d < 1) throw ValidationError("PureState: local dimension must be >= 1");
  if (amps_.size() != d * d) throw ValidationError("PureState: amplitude vector must have length d^2");
  if (!amps_.allFinite()) throw ValidationError("PureState: non-finite amplitude");
  if (std::abs(amps_.norm() - 1.0) > kPureNormTol)
    throw ValidationError("PureState: amplitudes must have unit norm");
}

// --- algebra --------------------------------------------------------------

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix partialTrace(const CMatrix& rhoAB, int dA, int dB, Subsystem keep) {
  if (rhoAB.rows() != dA * dB || rhoAB.cols() != dA * dB)
    throw ValidationError("partialTrace: dimension mismatch");
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(dA, dA);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j)
        for (int m = 0; m < dB; ++m) out(i, j) += rhoAB(i * dB + m, j * dB + m);
    return out;
  }
  CMatrix out = CMatrix::Zero(dB, dB);
  for (int m = 0; m < dB; ++m)
    for (int n = 0; n < dB; ++n)
      for (int i = 0; i < dA; ++i) out(m, n) += rhoAB(i * dB + m, i * dB + n);
  return out;
}

CMatrix partialTrace(const BipartiteState& state, Subsystem keep) {
  const int d = state.localDim();
  return partialTrace(state.matrix(), d, d, keep);
}

HermitianEigen hermitianEigen(const CMatrix& m) {
  requireHermitian(m, "hermitianEigen");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitianEigen: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

RVector clampedSpectrum(const CMatrix& rho) {
  requireHermitian(rho, "spectrum");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  RVector ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < -kPsdTol)
      throw ValidationError("spectrum: eigenvalue " + fmtValue(ev(k)) + " below PSD tolerance");
    if (ev(k) < 0.0) ev(k) = 0.0;
  }
  return ev;
}

CMatrix psdSqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  RVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix absOp(const CMatrix& a) { return psdSqrt(a.adjoint() * a); }

Norms norms(const CMatrix& m) {
  requireSquare(m, "norms");
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  return {s.sum(), std::sqrt((m.adjoint() * m).trace().real()), s.size() ? s(0) : 0.0};
}

double opNorm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

Distances fidelityAndDistances(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw ValidationError("fidelityAndDistances: dimension mismatch");
  Eigen::JacobiSVD<CMatrix> svd(psdSqrt(rho) * psdSqrt(sigma));
  const double f = std::clamp(svd.singularValues().sum(), 0.0, 1.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho - sigma, Eigen::EigenvaluesOnly);
  const double td = std::clamp(0.5 * es.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
  return {f, td, std::sqrt(std::max(0.0, 2.0 - 2.0 * f))};
}

Distances fidelityAndDistances(const BipartiteState& rho, const BipartiteState& sigma) {
  if (rho.localDim() != sigma.localDim())
    throw ValidationError("fidelityAndDistances: local dimensions differ");
  return fidelityAndDistances(rho.matrix(), sigma.matrix());
}

// --- special states -------------------------------------------------------

CVector singletVector(int d) {
  return maxEntangledVector(CMatrix::Identity(d, d));
}

CVector maxEntangledVector(const CMatrix& u) {
  const int d = static_cast<int>(u.rows());
  CVector v(d * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m) v(compositeIndex(i, m, d)) = u(m, i) * s;
  return v;
}

BipartiteState singletState(int d) { return PureState(d, singletVector(d)).density(); }

BipartiteState maximallyMixed(int d) {
  return BipartiteState(d, CMatrix::Identity(d * d, d * d) / static_cast<double>(d * d));
}

BipartiteState productState(const CMatrix& rhoA, const CMatrix& rhoB) {
  if (rhoA.rows() != rhoB.rows()) throw ValidationError("productState: local dimensions differ");
  return BipartiteState(static_cast<int>(rhoA.rows()), tensor(rhoA, rhoB));
}

// --- randomness -----------------------------------------------------------

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser over (seed, index)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  // explicit loop order so that the stream consumption is fixed
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

CMatrix haarUnitary(int n, Rng& rng) {
  if (n < 1) throw ValidationError("haarUnitary: dimension must be >= 1");
  const CMatrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const cplx diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= (mag > 0.0 ? diag / mag : cplx(1.0, 0.0));
  }
  return q;
}

PureState randomPureState(int d, Rng& rng) {
  CVector v = ginibre(d * d, 1, rng).col(0);
  v /= v.norm();
  return PureState(d, std::move(v));
}

BipartiteState randomState(int d, int rank, Rng& rng) {
  if (d < 1) throw ValidationError("randomState: local dimension must be >= 1");
  if (rank < 1 || rank > d * d) throw ValidationError("randomState: rank must lie in [1, d^2]");
  if (rank == 1) return randomPureState(d, rng).density();
  const CMatrix g = ginibre(d * d, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return BipartiteState(d, std::move(rho));
}

}  // namespace fefwork
