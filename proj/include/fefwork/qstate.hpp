#pragma once

// Dense complex-matrix substrate shared by every other module.
//
// Index convention: a composite basis vector |i>_A |m>_B of C^d (x) C^d is
// stored at position i*d + m, i.e. Alice is the slow index. Every tensor,
// partial-trace and maximally-entangled-vector routine below relies on it.

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fefwork {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kPureNormTol = 1e-12;

/// Thrown when an input violates a documented invariant. The message names it.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { A, B };

inline int compositeIndex(int i, int m, int d) { return i * d + m; }

class PureState;

/// d^2 x d^2 density matrix on C^d (x) C^d. Validated on construction and
/// immutable afterwards.
class BipartiteState {
 public:
  BipartiteState(int d, CMatrix rho);

  int localDim() const { return d_; }
  int dim() const { return d_ * d_; }
  const CMatrix& matrix() const { return rho_; }

  static BipartiteState fromPure(const PureState& phi);

 private:
  int d_;
  CMatrix rho_;
};

class PureState {
 public:
  PureState(int d, CVector amplitudes);

  int localDim() const { return d_; }
  const CVector& amplitudes() const { return amps_; }
  BipartiteState density() const { return BipartiteState::fromPure(*this); }

 private:
  int d_;
  CVector amps_;
};

// --- validation -----------------------------------------------------------

void requireFinite(const CMatrix& m, const char* what);
void requireSquare(const CMatrix& m, const char* what);
double hermiticityError(const CMatrix& m);
void requireHermitian(const CMatrix& m, const char* what, double tol = kHermitianTol);
/// Checks Hermitian, unit trace and PSD at the module tolerances.
void requireDensityMatrix(const CMatrix& m, const char* what);

// --- algebra --------------------------------------------------------------

/// Kronecker product; the left factor is the slow index.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

CMatrix partialTrace(const CMatrix& rhoAB, int dA, int dB, Subsystem keep);
CMatrix partialTrace(const BipartiteState& state, Subsystem keep);

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns, orthonormal
};

HermitianEigen hermitianEigen(const CMatrix& m);

/// Eigenvalues with entries in [-kPsdTol, 0) clamped to zero. Anything
/// more negative raises ValidationError.
RVector clampedSpectrum(const CMatrix& rho);

/// Square root of a PSD matrix (small negative eigenvalues clamped).
CMatrix psdSqrt(const CMatrix& m);
/// |A| = sqrt(A^dagger A).
CMatrix absOp(const CMatrix& a);

struct Norms {
  double trace;  // sum of singular values
  double hs;     // sqrt(tr m^dagger m)
  double op;     // largest singular value
};

Norms norms(const CMatrix& m);
double opNorm(const CMatrix& m);

struct Distances {
  double fidelity;  // Uhlmann root fidelity ||sqrt(rho) sqrt(sigma)||_1
  double traceDistance;
  double buresDistance;
};

Distances fidelityAndDistances(const BipartiteState& rho, const BipartiteState& sigma);
Distances fidelityAndDistances(const CMatrix& rho, const CMatrix& sigma);

// --- special states -------------------------------------------------------

/// |Psi_d^+> = d^{-1/2} sum_i |ii>.
CVector singletVector(int d);
/// (I (x) U)|Psi_d^+>, components U(m, i)/sqrt(d) at index i*d + m.
CVector maxEntangledVector(const CMatrix& u);
BipartiteState singletState(int d);
BipartiteState maximallyMixed(int d);
BipartiteState productState(const CMatrix& rhoA, const CMatrix& rhoB);

// --- randomness -----------------------------------------------------------

/// Deterministic sub-seed for work unit `index` of a run seeded with `seed`.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t index);

/// Haar-distributed n x n unitary (QR of a Ginibre matrix with phase fix).
CMatrix haarUnitary(int n, Rng& rng);

PureState randomPureState(int d, Rng& rng);

/// Induced-measure mixed state: trace out a rank-dimensional ancilla from a
/// Haar pure state on C^{d^2} (x) C^{rank}. rank == 1 gives a Haar pure state.
BipartiteState randomState(int d, int rank, Rng& rng);

/// Complex Ginibre matrix with i.i.d. standard normal real/imag parts.
CMatrix ginibre(int rows, int cols, Rng& rng);

}  // namespace fefwork
