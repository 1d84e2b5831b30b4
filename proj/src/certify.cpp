#include "fefwork/certify.hpp"

#include <cmath>
#include <sstream>

#include "fefwork/process.hpp"

namespace fefwork {

namespace {

std::string describe(double lhs, const char* op, double rhs) {
  std::ostringstream os;
  os.precision(12);
  os << lhs << ' ' << op << ' ' << rhs;
  return os.str();
}

}  // namespace

CertifySummary certify(int d, int samples, const CertifyOptions& options) {
  if (samples < 1) throw ValidationError("certify: samples must be >= 1");
  if (d < 2) throw ValidationError("certify: d must be >= 2");
  const TemperatureScale t(options.kbt);
  const double ln2 = std::log(2.0);

  CertifySummary summary;
  summary.d = d;
  summary.samples = samples;

  auto check = [&](int k, bool ok, const char* name, std::string detail) {
    ++summary.checked;
    if (!ok) summary.violations.push_back({k, name, std::move(detail)});
  };
  auto note = [&](int k, bool ok, const char* name, std::string detail) {
    if (!ok) summary.informational.push_back({k, name, std::move(detail)});
  };

  for (int k = 0; k < samples; ++k) {
    Rng rng(deriveSeed(options.seed, static_cast<std::uint64_t>(k)));
    const int rank = 1 + k % (d * d);
    const BipartiteState rho = randomState(d, rank, rng);
    const BipartiteState sigma = randomState(d, 1 + (k / 2) % (d * d), rng);

    // norm chain
    const CMatrix diff = rho.matrix() - sigma.matrix();
    const Norms nd = norms(diff);
    const Distances dist = fidelityAndDistances(rho, sigma);
    const double fidBound = 2.0 * std::sqrt(std::max(0.0, 1.0 - dist.fidelity * dist.fidelity));
    check(k, nd.hs <= nd.trace + 1e-8, "norm-chain: hs <= trace", describe(nd.hs, "<=", nd.trace));
    check(k, nd.trace <= fidBound + 1e-8, "norm-chain: trace <= 2 sqrt(1-F^2)",
          describe(nd.trace, "<=", fidBound));
    check(k, fidBound <= 2.0 * dist.buresDistance + 1e-8, "norm-chain: 2 sqrt(1-F^2) <= 2 Bures",
          describe(fidBound, "<=", 2.0 * dist.buresDistance));

    // generalised Cauchy-Schwarz (Hilbert-Schmidt) and |tr A| <= tr|A|
    const CMatrix x = ginibre(d * d, d * d, rng);
    const CMatrix y = ginibre(d * d, d * d, rng);
    const CMatrix root = psdSqrt(absOp(x.adjoint() * y));
    const double lhsCs = std::pow(norms(root).hs, 2);
    const double rhsCs = norms(x).hs * norms(y).hs;
    check(k, lhsCs <= rhsCs * (1.0 + 1e-10) + 1e-8, "cauchy-schwarz", describe(lhsCs, "<=", rhsCs));
    const double absTr = std::abs(x.trace());
    const double trAbs = absOp(x).trace().real();
    check(k, absTr <= trAbs + 1e-8, "|tr A| <= tr|A|", describe(absTr, "<=", trAbs));

    // FEF, Q and the single-copy chain
    SeeSawOptions so = options.seeSaw;
    so.seed = deriveSeed(options.seed ^ 0x5eed5eedULL, static_cast<std::uint64_t>(k));
    const FefResult fef = fefSeeSaw(rho, so);
    QOptions qo;
    qo.tol = options.tolSdp;
    qo.fefUnitary = fef.optimalU;
    const QResult q = qFunction(rho, qo);
    check(k, q.qPrimal >= fef.value - 1e-7, "qPrimal >= F^", describe(q.qPrimal, ">=", fef.value));
    check(k, q.qPrimal <= q.qDual + 1e-7, "qPrimal <= qDual", describe(q.qPrimal, "<=", q.qDual));
    check(k, std::abs(q.hMin - minEntropyFromQ(q.qDual, d)) <= 1e-12, "H_min = -log2(Q d)",
          describe(q.hMin, "==", minEntropyFromQ(q.qDual, d)));
    if (q.recovery)
      check(k, std::abs(singletRecoveryFidelity(rho, *q.recovery) - q.qPrimal) <= 1e-9,
            "recovery channel attains qPrimal",
            describe(singletRecoveryFidelity(rho, *q.recovery), "==", q.qPrimal));
    check(k, q.hMin <= -std::log2(fef.value * d) + 1e-6, "H_min <= -log2(F^ d)",
          describe(q.hMin, "<=", -std::log2(fef.value * d)));

    const QResult qs = qFunction(sigma, {options.tolSdp, 200, 80, std::nullopt});
    const double dq = std::abs(q.qDual - qs.qDual);
    check(k, dq <= nd.hs + 1e-6, "Q continuity |dQ| <= ||d rho||_2", describe(dq, "<=", nd.hs + 1e-6));
    note(k, dq <= nd.hs / d + 1e-6, "Q continuity with 1/d constant",
         describe(dq, "<=", nd.hs / d + 1e-6));

    // bounds
    const EntropyReport e = entropyReport(rho);
    if (auto w = erasureGainBound(fef.value, d, t)) {
      const double back = fefUpperFromErasure(*w, d);
      check(k, std::abs(back - fef.value) <= 1e-10, "fef upper round trip",
            describe(back, "==", fef.value));
      const double rhs = *conditionalEntropyCeiling(fef.value, d);
      note(k, e.S_AgivenB <= rhs + 1e-7, "erasure lemma read at one copy",
           describe(e.S_AgivenB, "<=", rhs));
    }

    // erase-then-extract ledger total
    const Energy wEr = -erasureCostUpper(e, t);
    const WorkLedger ledger = replay(buildEraseExtractPipeline(rho, wEr, t), {options.kbt});
    const double expected = std::log(static_cast<double>(d) * d) - e.S_min * ln2 + wEr.inKbt;
    check(k, std::abs(ledger.total.inKbt - expected) <= 1e-12, "pipeline total",
          describe(ledger.total.inKbt, "==", expected));
  }
  return summary;
}

}  // namespace fefwork
