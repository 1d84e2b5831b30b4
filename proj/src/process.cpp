#include "fefwork/process.hpp"

#include <algorithm>
#include <cmath>

#include "fefwork/entropy.hpp"
#include "fefwork/fef.hpp"
#include "fefwork/thermo.hpp"

namespace fefwork {

namespace {

constexpr double kLevelTol = 1e-12;
constexpr double kStateMatchTol = 1e-9;

CMatrix ground(int d) {
  CMatrix g = CMatrix::Zero(d, d);
  g(0, 0) = 1.0;
  return g;
}

CMatrix applyEffect(const CMatrix& rho, int d, const UnitaryOp& op) {
  switch (op.effect) {
    case StateEffect::None:
      return rho;
    case StateEffect::Unitary: {
      if (!op.unitary || op.unitary->rows() != d * d || op.unitary->cols() != d * d)
        throw ValidationError("UnitaryOp: unitary effect needs a d^2 x d^2 matrix");
      const CMatrix& u = *op.unitary;
      if ((u.adjoint() * u - CMatrix::Identity(d * d, d * d)).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("UnitaryOp: attached matrix is not unitary");
      return u * rho * u.adjoint();
    }
    case StateEffect::Twirl:
      return materialize(twirl(BipartiteState(d, rho))).matrix();
    case StateEffect::EraseA:
      return tensor(ground(d), partialTrace(rho, d, d, Subsystem::B));
    case StateEffect::EraseB:
      return tensor(partialTrace(rho, d, d, Subsystem::A), ground(d));
    case StateEffect::MixA:
      return tensor(CMatrix::Identity(d, d) / d, partialTrace(rho, d, d, Subsystem::B));
    case StateEffect::MixB:
      return tensor(partialTrace(rho, d, d, Subsystem::A), CMatrix::Identity(d, d) / d);
  }
  return rho;
}

CMatrix gibbs(const std::vector<double>& levels, double kbt) {
  const double emin = *std::min_element(levels.begin(), levels.end());
  RVector w(static_cast<Eigen::Index>(levels.size()));
  for (std::size_t k = 0; k < levels.size(); ++k) w(k) = std::exp(-(levels[k] - emin) / kbt);
  w /= w.sum();
  return w.cast<cplx>().asDiagonal();
}

/// Splits H = H_A (x) I + I (x) H_B; throws if the levels do not split.
std::pair<std::vector<double>, std::vector<double>> splitLevels(const std::vector<double>& levels,
                                                                int d) {
  std::vector<double> a(d), b(d);
  for (int i = 0; i < d; ++i) a[i] = levels[compositeIndex(i, 0, d)] - levels[0];
  for (int m = 0; m < d; ++m) b[m] = levels[compositeIndex(0, m, d)];
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m)
      if (std::abs(levels[compositeIndex(i, m, d)] - a[i] - b[m]) > kLevelTol)
        throw ValidationError(
            "Thermalize: Hamiltonian has no local restriction (levels do not split over A and B)");
  return {a, b};
}

void requireLevels(const std::vector<double>& levels, int d, const char* what) {
  if (static_cast<int>(levels.size()) != d * d)
    throw ValidationError(std::string(what) + ": expected d^2 energy levels");
  for (double e : levels)
    if (!std::isfinite(e)) throw ValidationError(std::string(what) + ": non-finite energy level");
}

bool matches(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff() <= kStateMatchTol;
}

}  // namespace

std::string actionKind(const Action& a) {
  struct Visitor {
    std::string operator()(const RaiseLower&) const { return "raise-lower"; }
    std::string operator()(const Thermalize&) const { return "thermalize"; }
    std::string operator()(const UnitaryOp&) const { return "unitary"; }
    std::string operator()(const DeltaApprox&) const { return "delta-approx"; }
  };
  return std::visit(Visitor{}, a);
}

std::string toString(Classification c) {
  switch (c) {
    case Classification::ErasureOnA:
      return "erasure-on-A";
    case Classification::WorkExtraction:
      return "work-extraction";
    case Classification::Other:
      break;
  }
  return "other";
}

bool isDegenerate(const std::vector<double>& levels) {
  if (levels.empty()) return true;
  const auto [lo, hi] = std::minmax_element(levels.begin(), levels.end());
  return *hi - *lo < kLevelTol;
}

WorkLedger replaySegment(const CMatrix& rhoIn, int d, std::vector<double> levels,
                         const std::vector<Action>& actions, const ReplayOptions& options,
                         int indexOffset) {
  const TemperatureScale t(options.kbt);
  requireLevels(levels, d, "replay");
  CMatrix rho = rhoIn;
  WorkLedger ledger;
  ledger.total = Energy::fromKbt(0.0, t);

  for (std::size_t k = 0; k < actions.size(); ++k) {
    const Action& action = actions[k];
    LedgerEntry entry;
    entry.actionIndex = indexOffset + static_cast<int>(k);
    entry.kind = actionKind(action);
    entry.workGain = Energy::fromKbt(0.0, t);

    if (const auto* rl = std::get_if<RaiseLower>(&action)) {
      requireLevels(rl->levels, d, "RaiseLower");
      double shift = 0.0;  // tr[rho (H' - H)]
      for (int n = 0; n < d * d; ++n) shift += rho(n, n).real() * (rl->levels[n] - levels[n]);
      const double gain = options.sign == SignConvention::LoweringIsGain ? -shift : shift;
      entry.label = "raise/lower energy levels";
      entry.workGain = Energy::fromKbt(gain / t.kbt, t);
      levels = rl->levels;
    } else if (const auto* th = std::get_if<Thermalize>(&action)) {
      const double kbt = th->kbt.value_or(t.kbt);
      if (!(kbt > 0.0) || !std::isfinite(kbt)) throw ValidationError("Thermalize: kBT must be positive");
      switch (th->target) {
        case ThermalTarget::AB:
          rho = gibbs(levels, kbt);
          entry.label = "thermalize AB";
          break;
        case ThermalTarget::A: {
          const auto [a, b] = splitLevels(levels, d);
          rho = tensor(gibbs(a, kbt), partialTrace(rho, d, d, Subsystem::B));
          entry.label = "thermalize A";
          break;
        }
        case ThermalTarget::B: {
          const auto [a, b] = splitLevels(levels, d);
          rho = tensor(partialTrace(rho, d, d, Subsystem::A), gibbs(b, kbt));
          entry.label = "thermalize B";
          break;
        }
      }
    } else if (const auto* op = std::get_if<UnitaryOp>(&action)) {
      if (!(op->successProb > 0.0 && op->successProb <= 1.0))
        throw ValidationError("UnitaryOp: success probability must lie in (0, 1]");
      rho = applyEffect(rho, d, *op);
      entry.label = op->description;
      entry.workGain = Energy::fromKbt(op->declaredWork.value() / t.kbt, t);
      ledger.successProb *= op->successProb;
    } else if (const auto* da = std::get_if<DeltaApprox>(&action)) {
      if (!(da->delta >= 0.0 && da->delta <= 1.0))
        throw ValidationError("DeltaApprox: delta must lie in [0, 1]");
      const BipartiteState target(d, da->target);
      const double td = fidelityAndDistances(BipartiteState(d, rho), target).traceDistance;
      if (td > da->delta + 1e-12)
        throw ValidationError("DeltaApprox: target is not delta-close to the current state");
      rho = target.matrix();
      entry.label = "delta-approximation";
      ledger.successProb *= 1.0 - da->delta;
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    ledger.total = ledger.total + entry.workGain;
    ledger.perAction.push_back(std::move(entry));
  }
  ledger.finalState = std::move(rho);
  ledger.finalLevels = std::move(levels);
  return ledger;
}

WorkLedger replay(const ProcessSpec& spec, const ReplayOptions& options) {
  if (spec.actions.empty()) throw InvalidProcess("process must contain at least one action");
  const int d = spec.initialState.localDim();
  std::vector<double> levels = spec.initialLevels;
  if (levels.empty()) levels.assign(static_cast<std::size_t>(d * d), 0.0);
  requireLevels(levels, d, "ProcessSpec");
  if (!isDegenerate(levels)) throw InvalidProcess("initial Hamiltonian must be fully degenerate");

  WorkLedger ledger = replaySegment(spec.initialState.matrix(), d, levels, spec.actions, options);

  for (std::size_t n = 0; n < levels.size(); ++n)
    if (std::abs(ledger.finalLevels[n] - levels[n]) > kLevelTol)
      throw InvalidProcess("final Hamiltonian differs from the initial one");

  const CMatrix& fin = ledger.finalState;
  const CMatrix mixed = CMatrix::Identity(d * d, d * d) / static_cast<double>(d * d);
  const CMatrix erased = tensor(ground(d), partialTrace(spec.initialState, Subsystem::B));
  if (matches(fin, mixed))
    ledger.classification = Classification::WorkExtraction;
  else if (matches(fin, erased))
    ledger.classification = Classification::ErasureOnA;
  else
    ledger.classification = Classification::Other;
  return ledger;
}

ProcessSpec buildEraseExtractPipeline(const BipartiteState& state, const Energy& erasureWork,
                              const TemperatureScale& t) {
  const int d = state.localDim();
  const EntropyReport e = entropyReport(state);
  const double ln2 = std::log(2.0);
  const double l = std::log2(static_cast<double>(d));

  // erase the side whose partner carries S_min
  const bool eraseA = e.S_B <= e.S_A;
  const double sKept = eraseA ? e.S_B : e.S_A;

  std::vector<Action> actions;
  actions.push_back(UnitaryOp{eraseA ? "erasure on A" : "erasure on B",
                              Energy::fromKbt(erasureWork.value() / t.kbt, t), 1.0,
                              eraseA ? StateEffect::EraseA : StateEffect::EraseB, std::nullopt});
  actions.push_back(UnitaryOp{eraseA ? "extraction on B" : "extraction on A",
                              Energy::fromKbt((l - sKept) * ln2, t), 1.0,
                              eraseA ? StateEffect::MixB : StateEffect::MixA, std::nullopt});
  actions.push_back(UnitaryOp{eraseA ? "extraction on A" : "extraction on B",
                              Energy::fromKbt(std::log(static_cast<double>(d)), t), 1.0,
                              eraseA ? StateEffect::MixA : StateEffect::MixB, std::nullopt});
  return ProcessSpec{state, std::move(actions), {}};
}

std::optional<ProcessSpec> buildTwirlPipeline(const PureState& phi, const TemperatureScale& t) {
  const int d = phi.localDim();
  const IsotropicParams twirled = twirl(phi.density());
  const double fef = isotropicFef(twirled);
  if (!exceedsEntanglementThreshold(fef, d)) return std::nullopt;

  const Energy twirlCost = twirlWorkCost(phi, t);
  const BipartiteState iso = materialize(twirled);
  ProcessSpec tail = buildEraseExtractPipeline(iso, Energy::fromKbt(std::log(fef * d), t), t);

  std::vector<Action> actions;
  actions.push_back(UnitaryOp{"twirl", -twirlCost, 1.0, StateEffect::Twirl, std::nullopt});
  for (auto& a : tail.actions) actions.push_back(std::move(a));
  return ProcessSpec{phi.density(), std::move(actions), {}};
}

}  // namespace fefwork
