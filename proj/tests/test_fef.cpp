#include "doctest.h"

#include <cmath>

#include "fefwork/fef.hpp"
#include "fefwork/isotropic.hpp"
#include "fefwork/thermo.hpp"
#include "oracles.hpp"

using namespace fefwork;

TEST_CASE("overlap matches the index-sum oracle") {
  Rng rng(4);
  for (int d = 2; d <= 4; ++d) {
    const BipartiteState rho = randomState(d, 2, rng);
    const CMatrix u = haarUnitary(d, rng);
    CHECK(maxEntangledOverlap(rho, u) == doctest::Approx(oracle::overlapBySum(rho.matrix(), u)).epsilon(1e-12));
  }
}

TEST_CASE("maxEntangledVector is normalised and maximally entangled") {
  Rng rng(9);
  const CMatrix u = haarUnitary(3, rng);
  const CVector v = maxEntangledVector(u);
  CHECK(v.norm() == doctest::Approx(1.0));
  const BipartiteState rho(3, v * v.adjoint());
  CHECK((partialTrace(rho, Subsystem::A) - CMatrix::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("polarUnitary") {
  Rng rng(12);
  const CMatrix w = ginibre(3, 3, rng);
  const CMatrix u = polarUnitary(w);
  CHECK((u.adjoint() * u - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  // the polar factor maximises Re tr(U^dagger W)
  const double best = (u.adjoint() * w).trace().real();
  for (int k = 0; k < 200; ++k) CHECK((haarUnitary(3, rng).adjoint() * w).trace().real() <= best + 1e-12);
}

TEST_CASE("see-saw pins") {
  for (int d = 2; d <= 4; ++d) {
    const FefResult r = fefSeeSaw(singletState(d));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.optimalU.rows() == d);
  }
  const FefResult mixed = fefSeeSaw(maximallyMixed(3));
  CHECK(mixed.value == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  // locally rotated singlet: FEF stays 1
  Rng rng(8);
  const CMatrix ua = haarUnitary(2, rng), ub = haarUnitary(2, rng);
  const CMatrix w = tensor(ua, ub);
  const BipartiteState rotated(2, w * singletState(2).matrix() * w.adjoint());
  CHECK(fefSeeSaw(rotated).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("see-saw objective is non-decreasing") {
  Rng rng(21);
  for (int k = 0; k < 30; ++k) {
    const BipartiteState rho = randomState(3, 1 + k % 9, rng);
    const SeeSawTrace tr = seeSawFrom(rho, haarUnitary(3, rng), 300, 1e-12);
    for (std::size_t i = 1; i < tr.objective.size(); ++i)
      CHECK(tr.objective[i] >= tr.objective[i - 1] - 1e-13);
  }
}

TEST_CASE("see-saw is deterministic in the seed") {
  Rng rng(5);
  const BipartiteState rho = randomState(3, 3, rng);
  SeeSawOptions opt;
  opt.seed = 1234;
  const FefResult a = fefSeeSaw(rho, opt), b = fefSeeSaw(rho, opt);
  CHECK(a.value == b.value);
  CHECK((a.optimalU - b.optimalU).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("see-saw dominates Monte Carlo search") {
  Rng rng(314);
  for (int k = 0; k < 30; ++k) {
    const BipartiteState rho = randomState(2, 1 + k % 4, rng);
    CHECK(fefSeeSaw(rho).value >= fefMonteCarlo(rho, 2000, 100 + k) - 1e-7);
  }
}

TEST_CASE("see-saw recovers the isotropic FEF") {
  for (int d = 2; d <= 3; ++d)
    for (double p : {-1.0 / (d * d - 1.0), -0.05, 0.0, 0.3, 0.9}) {
      const IsotropicParams iso(d, p);
      CHECK(fefSeeSaw(materialize(iso)).value == doctest::Approx(isotropicFef(iso)).epsilon(1e-8));
    }
}

TEST_CASE("isotropic family") {
  const IsotropicParams iso(2, 0.5);
  CHECK(iso.singletOverlap() == doctest::Approx(0.625));
  CHECK(iso.opNorm() == doctest::Approx(0.625));
  const RVector spec = isotropicSpectrum(iso);
  CHECK(spec(0) == doctest::Approx(0.125));
  CHECK(spec(3) == doctest::Approx(0.625));
  const RVector numeric = hermitianEigen(materialize(iso).matrix()).values;
  CHECK((numeric - spec).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(IsotropicParams(2, 1.5), ValidationError);
  CHECK_THROWS_AS(IsotropicParams(2, -0.5), ValidationError);
  CHECK_THROWS_AS(IsotropicParams(1, 0.5), ValidationError);
  CHECK_NOTHROW(IsotropicParams(2, -1.0 / 3.0));
}

TEST_CASE("twirl") {
  SUBCASE("closed form against the Haar average") {
    Rng rng(44);
    const BipartiteState rho = randomState(2, 2, rng);
    const CMatrix closed = materialize(twirl(rho)).matrix();
    const CMatrix mc = oracle::twirlMonteCarlo(rho.matrix(), 2, 10000, 99);
    CHECK((closed - mc).cwiseAbs().maxCoeff() <= 0.02);
  }
  SUBCASE("idempotent and overlap preserving") {
    Rng rng(45);
    for (int d = 2; d <= 4; ++d) {
      const BipartiteState rho = randomState(d, d, rng);
      const IsotropicParams once = twirl(rho);
      const IsotropicParams twice = twirl(materialize(once));
      CHECK(std::abs(once.p - twice.p) < 1e-10);
      const double overlap = (singletVector(d).adjoint() * rho.matrix() * singletVector(d))(0, 0).real();
      CHECK(std::abs(once.singletOverlap() - overlap) < 1e-10);
    }
  }
  SUBCASE("pure-state work cost") {
    const TemperatureScale t(1.0);
    CHECK(twirlWorkCost(PureState(2, singletVector(2)), t).value() == doctest::Approx(0.0));
    // |0>|+> has singlet overlap 1/4, so T maps it to I/4
    CVector prod = CVector::Zero(4);
    prod(0) = prod(1) = 1.0 / std::sqrt(2.0);
    const PureState phi(2, prod);
    CHECK(twirl(phi.density()).p == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(twirlWorkCost(phi, t).value() == doctest::Approx(std::log(0.25)));
    CHECK(twirlWorkCost(phi, TemperatureScale(2.0)).value() == doctest::Approx(2.0 * std::log(0.25)));
  }
}
