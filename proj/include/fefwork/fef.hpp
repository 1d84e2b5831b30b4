#pragma once

#include <cstdint>
#include <vector>

#include "fefwork/isotropic.hpp"
#include "fefwork/qstate.hpp"
#include "fefwork/units.hpp"

namespace fefwork {

/// Best overlap <Psi_U|rho|Psi_U> found over maximally entangled vectors
/// |Psi_U> = (I (x) U)|Psi_d^+>. Always a lower bound on the fully entangled
/// fraction.
struct FefResult {
  double value = 0.0;
  CMatrix optimalU;
  int restartsUsed = 0;
  bool converged = false;
};

struct SeeSawOptions {
  int restarts = 16;
  int maxIter = 500;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

struct SeeSawTrace {
  CMatrix u;
  std::vector<double> objective;  // f(U_0), f(U_1), ...
  bool converged = false;
};

/// <Psi_U|rho|Psi_U>.
double maxEntangledOverlap(const BipartiteState& state, const CMatrix& u);

/// Polar factor A B^dagger of W = A S B^dagger.
CMatrix polarUnitary(const CMatrix& w);

/// Alternating maximisation from a single start: w = rho v(U), reshape w to
/// W with W(m, i) = w(i d + m), replace U by the polar factor of W. The
/// objective is non-decreasing because rho is PSD.
SeeSawTrace seeSawFrom(const BipartiteState& state, const CMatrix& u0, int maxIter, double tol);

/// Identity start plus `restarts` Haar-random starts. Each start k >= 1 draws
/// from its own sub-seed, so the result does not depend on evaluation order;
/// ties go to the lowest start index.
FefResult fefSeeSaw(const BipartiteState& state, const SeeSawOptions& options = {});

/// Plain maximum of the overlap over `samples` Haar-random unitaries.
double fefMonteCarlo(const BipartiteState& state, int samples, std::uint64_t seed);

/// Closed-form U (x) U* twirl: projects onto the isotropic family while
/// keeping the singlet overlap.
IsotropicParams twirl(const BipartiteState& state);

/// k_B T ln ||T(phi)||_inf. Negative values are work gains.
Energy twirlWorkCost(const PureState& phi, const TemperatureScale& t);

}  // namespace fefwork
