#pragma once

// Allowed-process ledger. A process is a finite sequence of actions applied
// one at a time to a state carrying a diagonal Hamiltonian; each action
// contributes a work gain for the observer and the process must end on the
// Hamiltonian it started with.
//
// Erasure and extraction stages are not micro-simulated: their work is a
// declared input and their effect on the state is one of the fixed maps in
// StateEffect.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fefwork/qstate.hpp"
#include "fefwork/units.hpp"

namespace fefwork {

/// Raising/lowering levels changes the observer's battery by -tr[rho(H'-H)]
/// under LoweringIsGain (lowering an occupied level is a gain) and by
/// +tr[rho(H'-H)] under RaisingIsGain.
enum class SignConvention { LoweringIsGain, RaisingIsGain };

enum class ThermalTarget { A, B, AB };

enum class StateEffect {
  None,
  Unitary,  // rho -> U rho U^dagger with the attached unitary
  Twirl,    // closed-form U (x) U* twirl
  EraseA,   // rho -> |0><0| (x) rho_B
  EraseB,   // rho -> rho_A (x) |0><0|
  MixA,     // rho -> I/d (x) rho_B
  MixB,     // rho -> rho_A (x) I/d
};

struct RaiseLower {
  std::vector<double> levels;
};

struct Thermalize {
  ThermalTarget target = ThermalTarget::AB;
  std::optional<double> kbt;  // defaults to the process temperature
};

struct UnitaryOp {
  std::string description;
  Energy declaredWork;
  double successProb = 1.0;
  StateEffect effect = StateEffect::None;
  std::optional<CMatrix> unitary;
};

struct DeltaApprox {
  CMatrix target;
  double delta = 0.0;
};

using Action = std::variant<RaiseLower, Thermalize, UnitaryOp, DeltaApprox>;

std::string actionKind(const Action& a);

struct ProcessSpec {
  BipartiteState initialState;
  std::vector<Action> actions;
  /// Initial diagonal Hamiltonian; empty means all zeros. Must be fully
  /// degenerate.
  std::vector<double> initialLevels;
};

enum class Classification { ErasureOnA, WorkExtraction, Other };

std::string toString(Classification c);

struct LedgerEntry {
  int actionIndex = 0;
  std::string kind;
  std::string label;
  Energy workGain;
};

struct WorkLedger {
  std::vector<LedgerEntry> perAction;
  Energy total;
  double successProb = 1.0;
  Classification classification = Classification::Other;
  CMatrix finalState;
  std::vector<double> finalLevels;
};

class InvalidProcess : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReplayOptions {
  double kbt = 1.0;
  SignConvention sign = SignConvention::LoweringIsGain;
};

/// Runs actions from an arbitrary (state, Hamiltonian) without checking the
/// end conditions. `indexOffset` shifts the recorded action indices.
WorkLedger replaySegment(const CMatrix& rho, int d, std::vector<double> levels,
                         const std::vector<Action>& actions, const ReplayOptions& options,
                         int indexOffset = 0);

/// Full replay with validation: non-empty, degenerate start, final
/// Hamiltonian equal to the initial one. Throws InvalidProcess otherwise.
WorkLedger replay(const ProcessSpec& spec, const ReplayOptions& options = {});

bool isDegenerate(const std::vector<double>& levels);

/// Erase the lower-entropy side, extract on the other side, then extract on
/// the erased side. Roles are swapped when S(rho_A) < S(rho_B).
ProcessSpec buildEraseExtractPipeline(const BipartiteState& state, const Energy& erasureWork,
                              const TemperatureScale& t);

/// Twirl to the isotropic family, then the erasure/extraction chain on T(phi).
/// Not applicable (nullopt) unless F[T(phi)] > 1/d.
std::optional<ProcessSpec> buildTwirlPipeline(const PureState& phi, const TemperatureScale& t);

}  // namespace fefwork
