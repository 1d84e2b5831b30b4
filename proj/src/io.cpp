#include "fefwork/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fefwork {

namespace {

int requireInt(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ValidationError(std::string(what) + ": missing integer field \"" + key + "\"");
  return j.at(key).get<int>();
}

double requireNumber(const json& j, const char* key, const char* what) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ValidationError(std::string(what) + ": missing numeric field \"" + key + "\"");
  return j.at(key).get<double>();
}

const char* effectName(StateEffect e) {
  switch (e) {
    case StateEffect::None: return "none";
    case StateEffect::Unitary: return "unitary";
    case StateEffect::Twirl: return "twirl";
    case StateEffect::EraseA: return "erase-A";
    case StateEffect::EraseB: return "erase-B";
    case StateEffect::MixA: return "mix-A";
    case StateEffect::MixB: return "mix-B";
  }
  return "none";
}

StateEffect parseEffect(const std::string& s) {
  for (StateEffect e : {StateEffect::None, StateEffect::Unitary, StateEffect::Twirl,
                        StateEffect::EraseA, StateEffect::EraseB, StateEffect::MixA,
                        StateEffect::MixB})
    if (s == effectName(e)) return e;
  throw ValidationError("unitary action: unknown effect \"" + s + "\"");
}

const char* targetName(ThermalTarget t) {
  switch (t) {
    case ThermalTarget::A: return "A";
    case ThermalTarget::B: return "B";
    case ThermalTarget::AB: return "AB";
  }
  return "AB";
}

json optionalJson(const std::optional<double>& v, const char* units, const char* relation,
                  const char* provenance) {
  if (!v) return nullptr;
  return scalarJson(*v, units, relation, provenance);
}

json optionalJson(const std::optional<Energy>& v, const char* relation, const char* provenance) {
  if (!v) return nullptr;
  return energyJson(*v, relation, provenance);
}

}  // namespace

// --- matrices and states --------------------------------------------------

json matrixToJson(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

CMatrix matrixFromJson(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows * cols)
    throw ValidationError("matrix: expected " + std::to_string(rows * cols) +
                          " [re, im] entries in row-major order");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const json& e = j[static_cast<std::size_t>(r * cols + c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ValidationError("matrix: every entry must be a [re, im] number pair");
      m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  requireFinite(m, "matrix");
  return m;
}

BipartiteState stateFromJson(const json& j) {
  if (!j.is_object()) throw ValidationError("state: expected a JSON object");
  const int d = requireInt(j, "d", "state");
  if (d < 1) throw ValidationError("state: d must be >= 1");
  if (j.contains("family")) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "isotropic") return materialize(IsotropicParams(d, requireNumber(j, "p", "state")));
    if (family == "bell") return singletState(d);
    if (family == "pure-haar") {
      Rng rng(j.value("seed", std::uint64_t{0}));
      return randomPureState(d, rng).density();
    }
    throw ValidationError("state: unknown family \"" + family + "\"");
  }
  if (!j.contains("matrix")) throw ValidationError("state: needs either \"family\" or \"matrix\"");
  return BipartiteState(d, matrixFromJson(j.at("matrix"), d * d, d * d));
}

json stateToJson(const BipartiteState& state) {
  return {{"d", state.localDim()}, {"matrix", matrixToJson(state.matrix())}};
}

BipartiteState loadStateFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open state file " + path);
  return stateFromJson(json::parse(in));
}

std::optional<PureState> pureStateFromJson(const json& j) {
  const int d = requireInt(j, "d", "state");
  if (j.contains("family")) {
    const std::string family = j.at("family").get<std::string>();
    if (family == "bell") return PureState(d, singletVector(d));
    if (family == "pure-haar") {
      Rng rng(j.value("seed", std::uint64_t{0}));
      return randomPureState(d, rng);
    }
  }
  const BipartiteState rho = stateFromJson(j);
  const HermitianEigen eig = hermitianEigen(rho.matrix());
  if (eig.values(eig.values.size() - 1) < 1.0 - 1e-10) return std::nullopt;
  CVector v = eig.vectors.col(eig.vectors.cols() - 1);
  return PureState(d, v / v.norm());
}

// --- annotated numbers ----------------------------------------------------

json scalarJson(double v, const char* units, const char* relation, const char* provenance) {
  return {{"value", v}, {"units", units}, {"relation", relation}, {"provenance", provenance}};
}

json energyJson(const Energy& e, const char* relation, const char* provenance) {
  return {{"value", e.inKbt}, {"units", "kBT"}, {"relation", relation}, {"provenance", provenance}};
}

json toJson(const EntropyReport& e) {
  return {
      {"S", scalarJson(e.S, "bits", "von-neumann-entropy", "formula")},
      {"S_A", scalarJson(e.S_A, "bits", "von-neumann-entropy", "formula")},
      {"S_B", scalarJson(e.S_B, "bits", "von-neumann-entropy", "formula")},
      {"S_A_given_B", scalarJson(e.S_AgivenB, "bits", "conditional-entropy", "formula")},
      {"S_B_given_A", scalarJson(e.S_BgivenA, "bits", "conditional-entropy", "formula")},
      {"S_min", scalarJson(e.S_min, "bits", "min-marginal-entropy", "formula")},
      {"op_norm_rho", scalarJson(e.opNormRho, "dimensionless", "operator-norm", "formula")},
      {"h_min_smooth_lower",
       json{{"value", e.hMinLower},
            {"units", "bits"},
            {"relation", "smooth-min-entropy-lower-bound"},
            {"provenance", "bound"},
            {"lower_bound", true}}},
  };
}

json toJson(const FefResult& f) {
  return {
      {"value", scalarJson(f.value, "dimensionless", "fully-entangled-fraction", "optimizer")},
      {"lower_bound", true},
      {"restarts_used", f.restartsUsed},
      {"converged", f.converged},
      {"optimal_u", matrixToJson(f.optimalU)},
  };
}

json toJson(const QResult& q, int d) {
  return {
      {"q_primal", scalarJson(q.qPrimal, "dimensionless", "singlet-recovery-fidelity", "optimizer")},
      {"q_dual", scalarJson(q.qDual, "dimensionless", "singlet-recovery-fidelity", "bound")},
      {"h_min", scalarJson(q.hMin, "bits", "conditional-min-entropy", "bound")},
      {"gap", scalarJson(q.gap, "dimensionless", "plumbing", "optimizer")},
      {"converged", q.converged},
      {"newton_steps", q.newtonSteps},
      {"d", d},
  };
}

json toJson(const IsotropicParams& p) {
  return {
      {"d", p.d},
      {"p", scalarJson(p.p, "dimensionless", "isotropic-mixing", "formula")},
      {"singlet_overlap", scalarJson(p.singletOverlap(), "dimensionless", "singlet-overlap", "formula")},
      {"fef", scalarJson(p.opNorm(), "dimensionless", "isotropic-fef", "formula")},
  };
}

json toJson(const IsotropicThresholds& th) {
  return {
      {"d", th.d},
      {"harmonic_number", scalarJson(th.harmonic, "dimensionless", "harmonic-number", "formula")},
      {"p_tilde_phi", scalarJson(th.pTildePhi, "dimensionless", "povm-steering-weight", "formula")},
      {"fef_entanglement", scalarJson(th.fefEntanglement, "dimensionless", "fef-entanglement-threshold", "formula")},
      {"fef_lhs_projective", scalarJson(th.fefLhsProjective, "dimensionless", "fef-projective-steering-threshold", "formula")},
      {"fef_lhs_povm", scalarJson(th.fefLhsPovm, "dimensionless", "fef-povm-steering-threshold", "formula")},
      {"w_lhs_projective", energyJson(th.wLhsProjective, "erasure-work-projective-steering-threshold", "formula")},
      {"w_lhs_povm", energyJson(th.wLhsPovm, "erasure-work-povm-steering-threshold", "formula")},
      {"fef_lhv", th.fefLhv ? json(*th.fefLhv) : json(nullptr)},
      {"fef_lhv_note", "no closed form; supply a value to obtain the work threshold"},
  };
}

json toJson(const BoundsReport& r) {
  json estimate = {
      {"applicable", r.workEstimate.applicable},
      {"epsilon", scalarJson(r.epsilon, "dimensionless", "plumbing", "formula")},
      {"delta_eps", scalarJson(r.workEstimate.deltaEps, "bits", "extraction-estimate-resolution", "formula")},
      {"lambda", scalarJson(r.workEstimate.lambdaResidual, "bits", "lambda-gap", "formula")},
      {"error_bar", energyJson(r.workEstimate.errorBar, "extraction-estimate-resolution", "formula")},
      {"w_total_approx", optionalJson(r.workEstimate.wTotalApprox, "optimal-extraction-estimate", "formula")},
      {"w_er_approx", optionalJson(r.workEstimate.wErApprox, "optimal-erasure-estimate", "formula")},
  };
  json checks = {
      {"h_min_chain_holds", r.hMinChainHolds},
      {"ceiling_holds_single_copy",
       r.ceilingHoldsSingleCopy ? json(*r.ceilingHoldsSingleCopy) : json(nullptr)},
      {"entropic_gap", scalarJson(r.entropicGap, "bits", "conditional-vs-min-entropy-gap", "formula")},
  };
  return {
      {"d", r.d},
      {"kbt", r.kbt},
      {"entropy", toJson(r.entropy)},
      {"fef", toJson(r.fef)},
      {"q", toJson(r.q, r.d)},
      {"bounds",
       {
           {"conditional_entropy_ceiling", optionalJson(r.conditionalEntropyCeiling, "bits", "conditional-entropy-ceiling", "bound")},
           {"erasure_gain_lower", optionalJson(r.erasureGainLower, "erasure-work-gain-lower-bound", "bound")},
           {"erasure_cost_upper", energyJson(r.erasureCostUpper, "erasure-work-cost-upper-bound", "bound")},
           {"fef_upper", optionalJson(r.fefUpper, "dimensionless", "fef-upper-from-erasure", "bound")},
           {"extract_lower", energyJson(r.extractLower, "extraction-work-lower-bound", "bound")},
       }},
      {"extraction_estimate", estimate},
      {"thresholds", toJson(r.thresholds)},
      {"checks", checks},
  };
}

json toJson(const WorkLedger& ledger, const ReplayOptions& options) {
  json rows = json::array();
  for (const auto& e : ledger.perAction)
    rows.push_back({{"index", e.actionIndex},
                    {"kind", e.kind},
                    {"label", e.label},
                    {"work_gain", energyJson(e.workGain, "action-work-gain", "formula")}});
  return {
      {"kbt", options.kbt},
      {"sign_convention", toString(options.sign)},
      {"entries", rows},
      {"total", energyJson(ledger.total, "process-work-gain", "formula")},
      {"success_prob", scalarJson(ledger.successProb, "dimensionless", "process-success-probability", "formula")},
      {"classification", toString(ledger.classification)},
  };
}

// --- process specs --------------------------------------------------------

SignConvention parseSignConvention(const std::string& s) {
  if (s == "lowering-is-gain") return SignConvention::LoweringIsGain;
  if (s == "raising-is-gain") return SignConvention::RaisingIsGain;
  throw ValidationError("unknown sign convention \"" + s + "\"");
}

std::string toString(SignConvention s) {
  return s == SignConvention::LoweringIsGain ? "lowering-is-gain" : "raising-is-gain";
}

ProcessSpec processFromJson(const json& j, const TemperatureScale& t, const std::string& baseDir) {
  if (!j.is_object() || !j.contains("initial") || !j.contains("actions"))
    throw ValidationError("process: needs \"initial\" and \"actions\"");
  const json& init = j.at("initial");
  BipartiteState initial =
      init.is_string()
          ? loadStateFile((std::filesystem::path(baseDir) / init.get<std::string>()).string())
          : stateFromJson(init);
  const int d = initial.localDim();

  std::vector<Action> actions;
  for (const json& a : j.at("actions")) {
    const std::string kind = a.value("kind", "");
    if (kind == "raise-lower") {
      actions.push_back(RaiseLower{a.at("levels").get<std::vector<double>>()});
    } else if (kind == "thermalize") {
      Thermalize th;
      const std::string target = a.value("subsystem", "AB");
      if (target == "A") th.target = ThermalTarget::A;
      else if (target == "B") th.target = ThermalTarget::B;
      else if (target == "AB") th.target = ThermalTarget::AB;
      else throw ValidationError("thermalize: undefined subsystem \"" + target + "\"");
      if (a.contains("kbt")) th.kbt = a.at("kbt").get<double>();
      actions.push_back(th);
    } else if (kind == "unitary") {
      UnitaryOp op;
      op.description = a.value("description", "unitary");
      op.declaredWork = Energy::fromKbt(a.value("declared_work", 0.0) / t.kbt, t);
      op.successProb = a.value("success_prob", 1.0);
      op.effect = parseEffect(a.value("effect", "none"));
      if (a.contains("matrix")) op.unitary = matrixFromJson(a.at("matrix"), d * d, d * d);
      actions.push_back(std::move(op));
    } else if (kind == "delta-approx") {
      DeltaApprox da;
      da.target = stateFromJson(a.at("target")).matrix();
      da.delta = requireNumber(a, "delta", "delta-approx");
      actions.push_back(std::move(da));
    } else {
      throw ValidationError("process: unknown action kind \"" + kind + "\"");
    }
  }
  std::vector<double> levels;
  if (j.contains("initial_levels")) levels = j.at("initial_levels").get<std::vector<double>>();
  return ProcessSpec{std::move(initial), std::move(actions), std::move(levels)};
}

json processToJson(const ProcessSpec& spec) {
  json actions = json::array();
  for (const Action& a : spec.actions) {
    json out = {{"kind", actionKind(a)}};
    if (const auto* rl = std::get_if<RaiseLower>(&a)) {
      out["levels"] = rl->levels;
    } else if (const auto* th = std::get_if<Thermalize>(&a)) {
      out["subsystem"] = targetName(th->target);
      if (th->kbt) out["kbt"] = *th->kbt;
    } else if (const auto* op = std::get_if<UnitaryOp>(&a)) {
      out["description"] = op->description;
      out["declared_work"] = op->declaredWork.value();
      out["success_prob"] = op->successProb;
      out["effect"] = effectName(op->effect);
      if (op->unitary) out["matrix"] = matrixToJson(*op->unitary);
    } else if (const auto* da = std::get_if<DeltaApprox>(&a)) {
      out["target"] = {{"d", spec.initialState.localDim()}, {"matrix", matrixToJson(da->target)}};
      out["delta"] = da->delta;
    }
    actions.push_back(std::move(out));
  }
  json j = {{"initial", stateToJson(spec.initialState)}, {"actions", actions}};
  if (!spec.initialLevels.empty()) j["initial_levels"] = spec.initialLevels;
  return j;
}

}  // namespace fefwork
