#include "fefwork/qsdp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fefwork {

namespace {

constexpr double kChoiPsdTol = 1e-9;
constexpr double kChoiTpTol = 1e-8;
constexpr double kHessianRidge = 1e-10;

/// Orthonormal (Hilbert-Schmidt) basis of d x d Hermitian matrices.
std::vector<CMatrix> hermitianBasis(int d) {
  std::vector<CMatrix> basis;
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < d; ++k) {
    CMatrix e = CMatrix::Zero(d, d);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int k = 0; k < d; ++k)
    for (int l = k + 1; l < d; ++l) {
      CMatrix re = CMatrix::Zero(d, d);
      re(k, l) = s;
      re(l, k) = s;
      basis.push_back(std::move(re));
      CMatrix im = CMatrix::Zero(d, d);
      im(k, l) = cplx(0.0, -s);
      im(l, k) = cplx(0.0, s);
      basis.push_back(std::move(im));
    }
  return basis;
}

CMatrix liftB(const CMatrix& sigma, int dA) {
  return tensor(CMatrix::Identity(dA, dA), sigma);
}

struct Slack {
  bool feasible = false;
  CMatrix inverse;
  double logDet = 0.0;
};

Slack slackOf(const CMatrix& sigma, const CMatrix& rho, int d) {
  CMatrix s = liftB(sigma, d) - rho;
  s = 0.5 * (s + s.adjoint()).eval();
  Eigen::LLT<CMatrix> llt(s);
  Slack out;
  if (llt.info() != Eigen::Success) return out;
  double logDet = 0.0;
  for (Eigen::Index k = 0; k < s.rows(); ++k) {
    const double diag = std::real(llt.matrixLLT()(k, k));
    if (!(diag > 0.0)) return out;
    logDet += 2.0 * std::log(diag);
  }
  out.feasible = true;
  out.logDet = logDet;
  out.inverse = llt.solve(CMatrix::Identity(s.rows(), s.cols()));
  return out;
}

/// Rescale a PSD Y so that tr_A Y = I exactly.
std::optional<CMatrix> projectPrimal(const CMatrix& y, int d) {
  const CMatrix m = partialTrace(y, d, d, Subsystem::B);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  if (es.eigenvalues().minCoeff() <= 0.0) return std::nullopt;
  const CMatrix invSqrt =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().adjoint();
  const CMatrix lift = liftB(invSqrt, d);
  CMatrix out = lift * y * lift;
  return 0.5 * (out + out.adjoint());
}

/// Choi matrix of E from Y = sum_ab |a><b| (x) E^dagger(|a><b|):
/// J_(i,k),(j,l) = Y_(l,j),(k,i).
CMatrix choiFromAdjointOperator(const CMatrix& y, int d) {
  CMatrix j(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int jj = 0; jj < d; ++jj)
        for (int l = 0; l < d; ++l)
          j(compositeIndex(i, k, d), compositeIndex(jj, l, d)) =
              y(compositeIndex(l, jj, d), compositeIndex(k, i, d));
  return j;
}

}  // namespace

// --- ChannelChoi ----------------------------------------------------------

ChannelChoi::ChannelChoi(int dIn, int dOut, CMatrix j) : dIn_(dIn), dOut_(dOut), j_(std::move(j)) {
  if (dIn < 1 || dOut < 1) throw ValidationError("ChannelChoi: dimensions must be >= 1");
  if (j_.rows() != dIn * dOut || j_.cols() != dIn * dOut)
    throw ValidationError("ChannelChoi: Choi matrix must be (dIn dOut) square");
  requireHermitian(j_, "ChannelChoi", kChoiPsdTol);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(j_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kChoiPsdTol)
    throw ValidationError("ChannelChoi: Choi matrix is not PSD (map not completely positive)");
  const CMatrix tp = partialTrace(j_, dIn, dOut, Subsystem::A);
  if ((tp - CMatrix::Identity(dIn, dIn)).cwiseAbs().maxCoeff() > kChoiTpTol)
    throw ValidationError("ChannelChoi: tr_out J != I (map not trace preserving)");
}

CMatrix ChannelChoi::apply(const CMatrix& x) const {
  if (x.rows() != dIn_ || x.cols() != dIn_) throw ValidationError("ChannelChoi::apply: dimension");
  CMatrix out = CMatrix::Zero(dOut_, dOut_);
  for (int i = 0; i < dIn_; ++i)
    for (int j = 0; j < dIn_; ++j)
      if (x(i, j) != cplx(0.0, 0.0))
        out += x(i, j) * j_.block(i * dOut_, j * dOut_, dOut_, dOut_);
  return out;
}

CMatrix ChannelChoi::applyOnB(const CMatrix& rhoAB, int dA) const {
  if (rhoAB.rows() != dA * dIn_ || rhoAB.cols() != dA * dIn_)
    throw ValidationError("ChannelChoi::applyOnB: dimension");
  CMatrix out(dA * dOut_, dA * dOut_);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dA; ++b)
      out.block(a * dOut_, b * dOut_, dOut_, dOut_) =
          apply(rhoAB.block(a * dIn_, b * dIn_, dIn_, dIn_));
  return out;
}

ChannelChoi ChannelChoi::fromUnitary(const CMatrix& u) {
  const int d = static_cast<int>(u.rows());
  // J = d |Psi_V><Psi_V| with |Psi_V> = (I (x) U)|Psi^+>
  const CVector v = maxEntangledVector(u);
  CMatrix j = static_cast<double>(d) * (v * v.adjoint());
  return ChannelChoi(d, d, 0.5 * (j + j.adjoint()));
}

double singletRecoveryFidelity(const BipartiteState& state, const ChannelChoi& channel) {
  const int d = state.localDim();
  const CVector psi = singletVector(d);
  const CMatrix out = channel.applyOnB(state.matrix(), d);
  return (psi.adjoint() * out * psi)(0, 0).real();
}

// --- barrier solver -------------------------------------------------------

QResult qFunction(const BipartiteState& state, const QOptions& options) {
  const int d = state.localDim();
  const int n = d * d;
  const CMatrix& rho = state.matrix();
  const std::vector<CMatrix> basis = hermitianBasis(d);
  const int nb = static_cast<int>(basis.size());

  CMatrix fefU = options.fefUnitary ? *options.fefUnitary : fefSeeSaw(state).optimalU;

  QResult result;
  // strictly feasible start: I (x) sigma - rho >= 0.1 I
  CMatrix sigma = (opNorm(rho) + 0.1) * CMatrix::Identity(d, d);
  double t = 1.0;  // barrier weight on tr sigma; mu = 1/t
  Slack slack = slackOf(sigma, rho, d);

  auto barrier = [&](const CMatrix& s, const Slack& sl) { return t * s.trace().real() - sl.logDet; };

  bool stalled = false;
  for (int centering = 0; centering < options.maxCenterings; ++centering) {
    for (int step = 0; step < options.maxNewtonPerCentering; ++step) {
      const CMatrix& r = slack.inverse;
      const CMatrix rB = partialTrace(r, d, d, Subsystem::B);
      Eigen::VectorXd grad(nb);
      std::vector<CMatrix> g(nb);
      for (int k = 0; k < nb; ++k) {
        grad(k) = t * basis[k].trace().real() - (rB * basis[k]).trace().real();
        g[k] = r * liftB(basis[k], d);
      }
      Eigen::MatrixXd hess(nb, nb);
      for (int k = 0; k < nb; ++k)
        for (int l = k; l < nb; ++l) {
          const double h = (g[k].cwiseProduct(g[l].transpose())).sum().real();
          hess(k, l) = h;
          hess(l, k) = h;
        }
      hess.diagonal().array() += kHessianRidge * std::max(1.0, hess.diagonal().maxCoeff());
      const Eigen::VectorXd dx = -hess.ldlt().solve(grad);
      const double decrement2 = -grad.dot(dx);
      if (!std::isfinite(decrement2)) {
        stalled = true;
        break;
      }
      if (decrement2 < 1e-12) break;

      CMatrix dSigma = CMatrix::Zero(d, d);
      for (int k = 0; k < nb; ++k) dSigma += dx(k) * basis[k];

      const double f0 = barrier(sigma, slack);
      double alpha = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        CMatrix trial = sigma + alpha * dSigma;
        Slack ts = slackOf(trial, rho, d);
        if (ts.feasible && barrier(trial, ts) <= f0 - 0.25 * alpha * decrement2) {
          sigma = std::move(trial);
          slack = std::move(ts);
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      ++result.newtonSteps;
      if (!accepted) break;  // numerically centred as far as double allows
    }
    if (stalled) break;
    if (static_cast<double>(n) / t / d < 0.1 * options.tol) break;
    t *= 2.0;
  }

  result.qDual = sigma.trace().real() / d;

  // Primal candidates: the central-path multiplier Y = mu S^{-1}, rescaled
  // to exact feasibility, and the unitary channel from the FEF optimiser.
  const ChannelChoi unitaryChannel = ChannelChoi::fromUnitary(fefU.adjoint());
  double best = singletRecoveryFidelity(state, unitaryChannel);
  std::optional<ChannelChoi> recovery = unitaryChannel;
  if (slack.feasible) {
    if (auto y = projectPrimal(slack.inverse / t, d)) {
      try {
        ChannelChoi fromDual(d, d, choiFromAdjointOperator(*y, d));
        const double q = singletRecoveryFidelity(state, fromDual);
        if (q > best) {
          best = q;
          recovery = std::move(fromDual);
        }
      } catch (const ValidationError&) {
        // rounding pushed the candidate outside the channel set; keep the other one
      }
    }
  }
  result.qPrimal = best;
  result.recovery = std::move(recovery);
  result.gap = result.qDual - result.qPrimal;
  result.hMin = minEntropyFromQ(result.qDual, d);
  result.converged = !stalled && result.gap <= options.tol;
  return result;
}

}  // namespace fefwork
