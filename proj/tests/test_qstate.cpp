#include "doctest.h"

#include <cmath>

#include "fefwork/qstate.hpp"
#include "oracles.hpp"

using namespace fefwork;

namespace {

double maxAbs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix diag(std::initializer_list<double> v) {
  RVector r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double x : v) r(k++) = x;
  return r.cast<cplx>().asDiagonal();
}

}  // namespace

TEST_CASE("tensor follows the Alice-slow index convention") {
  CHECK(maxAbs(tensor(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)) == 0.0);
  CHECK(maxAbs(tensor(diag({1, 0}), diag({0, 1})) - diag({0, 1, 0, 0})) == 0.0);

  Rng rng(11);
  const CMatrix a = ginibre(2, 2, rng), b = ginibre(2, 2, rng), c = ginibre(2, 2, rng),
                d = ginibre(2, 2, rng);
  CHECK(maxAbs(tensor(a, b) * tensor(c, d) - tensor(a * c, b * d)) < 1e-12);
  CHECK(maxAbs(tensor(a, b) - oracle::kron(a, b)) == 0.0);
}

TEST_CASE("partial trace") {
  SUBCASE("maximally entangled marginal") {
    const BipartiteState bell = singletState(2);
    CHECK(maxAbs(partialTrace(bell, Subsystem::A) - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
    CHECK(maxAbs(partialTrace(bell, Subsystem::B) - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("product state") {
    Rng rng(3);
    const CMatrix ra = partialTrace(randomState(2, 2, rng), Subsystem::A);
    const CMatrix rb = partialTrace(randomState(2, 3, rng), Subsystem::B);
    const BipartiteState prod = productState(ra, rb);
    CHECK(maxAbs(partialTrace(prod, Subsystem::A) - ra) < 1e-14);
    CHECK(maxAbs(partialTrace(prod, Subsystem::B) - rb) < 1e-14);
  }
  SUBCASE("index-sum oracle, d = 2..4") {
    Rng rng(5);
    for (int d = 2; d <= 4; ++d) {
      const BipartiteState rho = randomState(d, d, rng);
      const CMatrix ra = partialTrace(rho, Subsystem::A);
      CHECK(std::abs(ra.trace() - 1.0) < 1e-12);
      CHECK(std::abs(partialTrace(rho, Subsystem::B).trace() - 1.0) < 1e-12);
      CHECK(maxAbs(ra - oracle::marginalA(rho.matrix(), d)) < 1e-14);
    }
  }
}

TEST_CASE("hermitianEigen") {
  const HermitianEigen id = hermitianEigen(CMatrix::Identity(4, 4));
  CHECK((id.values.array() - 1.0).abs().maxCoeff() < 1e-15);

  const HermitianEigen e = hermitianEigen(diag({3, 1, 2}));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(2.0));
  CHECK(e.values(2) == doctest::Approx(3.0));

  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    CMatrix g = ginibre(2, 2, rng);
    const CMatrix h = g + g.adjoint();
    const HermitianEigen he = hermitianEigen(h);
    const auto [lo, hi] = oracle::eig2(h);
    CHECK(he.values(0) == doctest::Approx(lo).epsilon(1e-12));
    CHECK(he.values(1) == doctest::Approx(hi).epsilon(1e-12));
    CHECK(maxAbs(h - he.vectors * he.values.cast<cplx>().asDiagonal() * he.vectors.adjoint()) < 1e-9);
    CHECK(maxAbs(he.vectors.adjoint() * he.vectors - CMatrix::Identity(2, 2)) < 1e-9);
  }

  CMatrix nonHerm = CMatrix::Zero(2, 2);
  nonHerm(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitianEigen(nonHerm), ValidationError);
}

TEST_CASE("norms") {
  const Norms n = norms(diag({1, -2}));
  CHECK(n.trace == doctest::Approx(3.0));
  CHECK(n.hs == doctest::Approx(std::sqrt(5.0)));
  CHECK(n.op == doctest::Approx(2.0));

  Rng rng(2);
  const Norms u = norms(haarUnitary(4, rng));
  CHECK(u.op == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u.hs == doctest::Approx(2.0).epsilon(1e-12));

  for (int k = 0; k < 50; ++k) {
    const Norms r = norms(ginibre(3, 3, rng));
    CHECK(r.hs <= r.trace + 1e-12);
    CHECK(r.op <= r.hs + 1e-12);
  }
}

TEST_CASE("fidelity and distances") {
  Rng rng(23);
  const BipartiteState rho = randomState(2, 3, rng);
  const Distances self = fidelityAndDistances(rho, rho);
  CHECK(self.fidelity == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(self.traceDistance == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(self.buresDistance < 1e-3);  // sqrt amplifies the 1e-8 fidelity error

  CVector e0 = CVector::Zero(4), e1 = CVector::Zero(4);
  e0(0) = 1.0;
  e1(3) = 1.0;
  const Distances orth = fidelityAndDistances(PureState(2, e0).density(), PureState(2, e1).density());
  CHECK(orth.fidelity == doctest::Approx(0.0));
  CHECK(orth.traceDistance == doctest::Approx(1.0));
  CHECK(orth.buresDistance == doctest::Approx(std::sqrt(2.0)));

  for (int k = 0; k < 20; ++k) {
    const PureState a = randomPureState(2, rng), b = randomPureState(2, rng);
    const double expected = std::abs(a.amplitudes().dot(b.amplitudes()));
    CHECK(fidelityAndDistances(a.density(), b.density()).fidelity == doctest::Approx(expected).epsilon(1e-6));
  }

  CHECK_THROWS_AS(fidelityAndDistances(singletState(2), singletState(3)), ValidationError);
}

TEST_CASE("Haar unitaries") {
  Rng rng(31);
  const CMatrix phase = haarUnitary(1, rng);
  CHECK(std::abs(std::abs(phase(0, 0)) - 1.0) < 1e-14);

  for (int n = 2; n <= 4; ++n) {
    const CMatrix u = haarUnitary(n, rng);
    CHECK(maxAbs(u.adjoint() * u - CMatrix::Identity(n, n)) < 1e-10);
  }

  // first moment vanishes
  CMatrix mean = CMatrix::Zero(2, 2);
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) mean += haarUnitary(2, rng);
  mean /= samples;
  CHECK(maxAbs(mean) <= 0.05);

  // E|U_00|^2 = 1/n for Haar
  double second = 0.0;
  for (int s = 0; s < samples; ++s) second += std::norm(haarUnitary(3, rng)(0, 0));
  CHECK(second / samples == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("random states") {
  Rng rng(41);
  const BipartiteState pure = randomState(2, 1, rng);
  CHECK(clampedSpectrum(pure.matrix()).maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));

  for (int d = 2; d <= 3; ++d) {
    const BipartiteState full = randomState(d, d * d, rng);
    CHECK(clampedSpectrum(full.matrix()).minCoeff() > 0.0);
  }

  Rng r1(99), r2(99);
  CHECK(maxAbs(randomState(3, 4, r1).matrix() - randomState(3, 4, r2).matrix()) == 0.0);

  CHECK_THROWS_AS(randomState(2, 0, rng), ValidationError);
  CHECK_THROWS_AS(randomState(2, 5, rng), ValidationError);
}

TEST_CASE("state validation") {
  CMatrix bad = CMatrix::Identity(4, 4) / 4.0;
  bad(0, 1) = 0.1;
  CHECK_THROWS_WITH_AS(BipartiteState(2, bad), doctest::Contains("not Hermitian"), ValidationError);
  CHECK_THROWS_WITH_AS(BipartiteState(2, CMatrix::Identity(4, 4)), doctest::Contains("trace"), ValidationError);
  CMatrix neg = CMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_WITH_AS(BipartiteState(2, neg), doctest::Contains("PSD"), ValidationError);
  CMatrix nan = CMatrix::Identity(4, 4) / 4.0;
  nan(2, 2) = std::nan("");
  CHECK_THROWS_AS(BipartiteState(2, nan), ValidationError);
  CHECK_THROWS_AS(BipartiteState(2, CMatrix::Identity(3, 3) / 3.0), ValidationError);
  CHECK_THROWS_AS(PureState(2, CVector::Ones(4)), ValidationError);
}

TEST_CASE("property: generated states are valid density matrices") {
  Rng rng(1234);
  for (int k = 0; k < 60; ++k) {
    const int d = 2 + k % 3;
    const BipartiteState rho = randomState(d, 1 + k % (d * d), rng);
    CHECK(hermiticityError(rho.matrix()) <= kHermitianTol);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= kTraceTol);
    CHECK(clampedSpectrum(rho.matrix()).minCoeff() >= 0.0);
  }
}

TEST_CASE("property: norm chain, Cauchy-Schwarz, |tr A| <= tr|A|") {
  Rng rng(77);
  for (int k = 0; k < 100; ++k) {
    const BipartiteState rho = randomState(2, 1 + k % 4, rng);
    const BipartiteState sigma = randomState(2, 1 + (k / 4) % 4, rng);
    const Norms n = norms(rho.matrix() - sigma.matrix());
    const Distances dist = fidelityAndDistances(rho, sigma);
    const double mid = 2.0 * std::sqrt(std::max(0.0, 1.0 - dist.fidelity * dist.fidelity));
    CHECK(n.hs <= n.trace + 1e-8);
    CHECK(n.trace <= mid + 1e-8);
    CHECK(mid <= 2.0 * dist.buresDistance + 1e-8);

    const CMatrix x = ginibre(4, 4, rng), y = ginibre(4, 4, rng);
    const double lhs = std::pow(norms(psdSqrt(absOp(x.adjoint() * y))).hs, 2);
    CHECK(lhs <= norms(x).hs * norms(y).hs + 1e-8);
    CHECK(std::abs(x.trace()) <= absOp(x).trace().real() + 1e-8);
  }
}
