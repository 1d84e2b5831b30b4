#pragma once

// Singlet-recovery fidelity Q(A|B) and the conditional min-entropy
// H_min(A|B) = -log2(Q d).
//
// Dual:   d Q = min { tr sigma : sigma >= 0, I_A (x) sigma >= rho }
// Primal: d Q = max { tr(rho Y) : Y >= 0, tr_A Y = I_B }
//
// A primal Y is d (I (x) E^dagger)(|Psi_d^+><Psi_d^+|) for a recovery
// channel E acting on B.

#include <optional>

#include "fefwork/fef.hpp"
#include "fefwork/qstate.hpp"

namespace fefwork {

/// Choi matrix J = sum_ij |i><j| (x) E(|i><j|) of a channel on one subsystem.
class ChannelChoi {
 public:
  ChannelChoi(int dIn, int dOut, CMatrix j);

  int dIn() const { return dIn_; }
  int dOut() const { return dOut_; }
  const CMatrix& matrix() const { return j_; }

  CMatrix apply(const CMatrix& x) const;
  /// (I_A (x) E) on the second factor of a dA*dIn square operator.
  CMatrix applyOnB(const CMatrix& rhoAB, int dA) const;

  static ChannelChoi fromUnitary(const CMatrix& u);

 private:
  int dIn_;
  int dOut_;
  CMatrix j_;
};

struct QResult {
  double qPrimal = 0.0;  // attained by `recovery`
  double qDual = 0.0;    // certified upper bound
  double hMin = 0.0;     // -log2(qDual d), the conservative side
  double gap = 0.0;
  bool converged = false;
  int newtonSteps = 0;
  std::optional<ChannelChoi> recovery;
};

struct QOptions {
  double tol = 1e-9;
  int maxNewtonPerCentering = 200;
  int maxCenterings = 80;
  /// Unitary achieving the best known FEF lower bound; when absent a
  /// default see-saw run supplies it.
  std::optional<CMatrix> fefUnitary;
};

QResult qFunction(const BipartiteState& state, const QOptions& options = {});

/// <Psi_d^+| (I (x) E)(rho) |Psi_d^+>
double singletRecoveryFidelity(const BipartiteState& state, const ChannelChoi& channel);

inline double minEntropyFromQ(double q, int d) { return -std::log2(q * d); }

}  // namespace fefwork
