#pragma once

#include <optional>

#include "fefwork/entropy.hpp"
#include "fefwork/fef.hpp"
#include "fefwork/qsdp.hpp"
#include "fefwork/thermo.hpp"

namespace fefwork {

struct ReportOptions {
  SeeSawOptions seeSaw;
  double tolSdp = 1e-9;
  double epsilon = 0.05;
  double kbt = 1.0;
};

/// Every entropy, FEF estimate and work bound for one state.
struct BoundsReport {
  int d = 2;
  double kbt = 1.0;
  double epsilon = 0.05;
  EntropyReport entropy;
  FefResult fef;
  QResult q;
  std::optional<double> conditionalEntropyCeiling;
  std::optional<Energy> erasureGainLower;
  Energy erasureCostUpper;
  std::optional<double> fefUpper;  // from the erasure-gain bound
  Energy extractLower;
  WorkEstimate workEstimate;
  IsotropicThresholds thresholds;
  /// -log2(qDual d) <= -log2(F^ d): holds at the single-copy level.
  bool hMinChainHolds = false;
  /// S(A|B) <= -log2(F^ d) read at one copy. Informational only; this
  /// reading fails for most states with F^ > 1/d.
  std::optional<bool> ceilingHoldsSingleCopy;
  double entropicGap = 0.0;  // S(A|B) - H_min(A|B)
};

BoundsReport buildReport(const BipartiteState& state, const ReportOptions& options = {});

}  // namespace fefwork
